use std::fmt::Write as _;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use chrono::Utc;
use serde::Serialize;
use serde_json::{json, Value};

use lrcp::bounds::{
    beta_c_pipeline, certified_delta, degree_tail_check_in, verify_cut_point, verify_epsilon_tail, verify_projection,
    verify_t_tail, ProjectionOptions, Report,
};
use lrcp::cmp::{cmp, degree_weights, DegreeWeightSpec, Exponent};
use lrcp::contact::{
    coupled_survival, estimate_threshold, simulate_with, survival_probability, ContactConfig, SurvivalEstimate,
    ThresholdOptions, SURVIVAL_CSV_HEADER,
};
use lrcp::cut::{find_cut_points, BlockSampler, GluedGraph};
use lrcp::graph::{read_graph, write_graph, Graph, GraphWindow};
use lrcp::rng::{derive_seed, EdgeCouplingStream};
use lrcp::{Error, Log2};

use crate::output::{emit, Run};
use crate::{Check, Cli, Command, Constants, Format, GraphSource};

pub enum Status {
    Ok,
    CheckFailed(String),
}

const DEFAULT_CUTPOINT_HALF_WIDTH: i64 = 200;
const DEFAULT_DEGREE_HALF_WIDTH: i64 = 1000;

pub fn run(cli: &Cli) -> Result<Status> {
    if let Some(n) = cli.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("cannot configure the thread pool")?;
    }
    let mut ctx = Ctx {
        cli,
        run: Run {
            command: command_name(&cli.command),
            seed: cli.seed,
            parameters: parameters(&cli.command)?,
            started: Utc::now(),
            outputs: Vec::new(),
        },
    };
    let status = match &cli.command {
        Command::Sample(a) => ctx.sample(a.s, a.lo, a.hi, a.fast),
        Command::Cutpoints(src) => ctx.cutpoints(src),
        Command::Block(a) => ctx.block(a.s, a.count),
        Command::Cmp(a) => ctx.cmp(&a.source, a.delta, &a.alpha),
        Command::Verify(a) => ctx.verify(a),
        Command::Constants(a) => ctx.constants(a),
        Command::Survival(a) => ctx.survival(a),
        Command::Threshold(a) => ctx.threshold(a),
    }?;
    ctx.run.write_manifest(cli.manifest.as_deref())?;
    Ok(status)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Sample(_) => "sample",
        Command::Cutpoints(_) => "cutpoints",
        Command::Block(_) => "block",
        Command::Cmp(_) => "cmp",
        Command::Verify(_) => "verify",
        Command::Constants(_) => "constants",
        Command::Survival(_) => "survival",
        Command::Threshold(_) => "threshold",
    }
}

/// The subcommand's own arguments as a flat JSON object.
fn parameters(c: &Command) -> Result<Value> {
    let v = serde_json::to_value(c)?;
    Ok(match v {
        Value::Object(map) => map.into_iter().next().map(|(_, inner)| inner).unwrap_or(Value::Null),
        other => other,
    })
}

pub fn parse_alpha(text: &str) -> Result<Exponent> {
    let e = match text.split_once('/') {
        Some((n, d)) => {
            let n: u32 = n.trim().parse().with_context(|| format!("invalid alpha numerator in {text:?}"))?;
            let d: u32 = d.trim().parse().with_context(|| format!("invalid alpha denominator in {text:?}"))?;
            Exponent::ratio(n, d)?
        }
        None => Exponent::new(text.trim().parse().with_context(|| format!("invalid alpha {text:?}"))?)?,
    };
    Ok(e)
}

fn sample_window(s: f64, lo: i64, hi: i64, seed: u64, fast: bool) -> Result<GraphWindow> {
    Ok(if fast {
        GraphWindow::sample_fast(s, lo, hi, seed)?
    } else {
        GraphWindow::sample(s, lo, hi, &EdgeCouplingStream::new(seed))?
    })
}

fn csv_f64(xs: impl IntoIterator<Item = f64>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

struct Ctx<'a> {
    cli: &'a Cli,
    run: Run,
}

impl Ctx<'_> {
    fn seed(&self) -> Result<u64> {
        self.cli
            .seed
            .ok_or_else(|| anyhow!("--seed is required for `{}`", self.run.command))
    }

    fn format(&self) -> Format {
        match (self.cli.format, &self.cli.command) {
            (Some(f), _) => f,
            (None, Command::Constants(_)) => Format::Json,
            (None, _) => Format::Csv,
        }
    }

    fn write(&mut self, content: &str) -> Result<()> {
        emit(self.cli.output.as_deref(), content)?;
        if let Some(p) = &self.cli.output {
            self.run.outputs.push(p.clone());
        }
        Ok(())
    }

    fn write_extra(&mut self, path: &Path, content: &str) -> Result<()> {
        emit(Some(path), content)?;
        self.run.outputs.push(path.to_path_buf());
        Ok(())
    }

    fn write_json(&mut self, v: &impl Serialize) -> Result<()> {
        let text = serde_json::to_string_pretty(v)? + "\n";
        self.write(&text)
    }

    /// Human-readable lines go to stdout unless stdout carries the primary output.
    fn note(&self, text: &str) {
        if self.cli.output.is_some() {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    }

    fn load(&self, src: &GraphSource) -> Result<GraphWindow> {
        if let Some(path) = &src.graph {
            let f = File::open(path).with_context(|| format!("cannot open graph file {}", path.display()))?;
            return read_graph(BufReader::new(f)).with_context(|| format!("cannot read graph file {}", path.display()));
        }
        let (Some(s), Some(lo), Some(hi)) = (src.s, src.lo, src.hi) else {
            bail!("either --graph FILE or all of --s, --lo and --hi are required");
        };
        sample_window(s, lo, hi, self.seed()?, src.fast)
    }

    fn sample(&mut self, s: f64, lo: i64, hi: i64, fast: bool) -> Result<Status> {
        let g = sample_window(s, lo, hi, self.seed()?, fast)?;
        let edges = g.labelled_edges();
        match self.format() {
            Format::Csv => self.write(&write_graph(&g))?,
            Format::Json => self.write_json(&json!({
                "s": g.s(), "lo": g.lo(), "hi": g.hi(), "seed": g.seed(), "edges": edges,
            }))?,
        }
        self.note(&format!("vertices={} edges={}\n", g.order(), edges.len()));
        Ok(Status::Ok)
    }

    fn cutpoints(&mut self, src: &GraphSource) -> Result<Status> {
        let g = self.load(src)?;
        let cuts = find_cut_points(&g);
        match self.format() {
            Format::Csv => {
                let mut out = String::from("vertex,tail_bound\n");
                for c in &cuts {
                    let _ = writeln!(out, "{},{}", c.vertex, c.tail_bound);
                }
                self.write(&out)?;
            }
            Format::Json => {
                let rows: Vec<Value> = cuts
                    .iter()
                    .map(|c| json!({"vertex": c.vertex, "tail_bound": c.tail_bound}))
                    .collect();
                self.write_json(&rows)?;
            }
        }
        Ok(Status::Ok)
    }

    fn block(&mut self, s: f64, count: usize) -> Result<Status> {
        if count == 0 {
            bail!("--count must be at least 1");
        }
        let seed = self.seed()?;
        let sampler = BlockSampler::new(s)?;
        let blocks = if count == 1 {
            vec![sampler.sample(&EdgeCouplingStream::new(seed))?]
        } else {
            GluedGraph::sample(&sampler, count, seed)?.blocks().to_vec()
        };
        match self.format() {
            Format::Csv if count == 1 => self.write(&blocks[0].to_file_string())?,
            Format::Csv => {
                let glued = lrcp::cut::glue_blocks(blocks)?;
                self.write(&glued.to_file_string(seed))?;
            }
            Format::Json => {
                let rows: Vec<Value> = blocks
                    .iter()
                    .map(|b| json!({"length": b.length(), "T": b.epsilons().len(), "epsilons": b.epsilons()}))
                    .collect();
                self.write_json(&json!({"s": s, "seed": seed, "blocks": rows}))?;
            }
        }
        Ok(Status::Ok)
    }

    fn cmp(&mut self, src: &GraphSource, delta: f64, alpha: &str) -> Result<Status> {
        let alpha = parse_alpha(alpha)?;
        if delta.is_nan() {
            bail!("--delta must be a number");
        }
        let g = self.load(src)?;
        let weights = degree_weights(&g, DegreeWeightSpec::new(delta));
        let p = cmp(&g, &weights, alpha)?;
        let lo = g.lo();
        let label = |v: usize| lo + v as i64;
        match self.format() {
            Format::Csv => self.write(&p.to_text(label))?,
            Format::Json => {
                let clusters: Vec<Vec<i64>> = p.clusters().iter().map(|c| c.iter().map(|&v| label(v)).collect()).collect();
                let w: Vec<u64> = (0..clusters.len()).map(|i| p.cluster_weight(i)).collect();
                self.write_json(&json!({
                    "alpha": alpha.value(), "delta": delta, "clusters": clusters, "weights": w,
                }))?;
            }
        }
        Ok(Status::Ok)
    }

    fn verify(&mut self, a: &crate::VerifyArgs) -> Result<Status> {
        let seed = self.seed()?;
        let report: Report = match a.check {
            Check::Cutpoint => {
                verify_cut_point(a.s, a.half_width.unwrap_or(DEFAULT_CUTPOINT_HALF_WIDTH), a.trials, seed)?
            }
            Check::EpsilonTail => verify_epsilon_tail(a.s, a.trials, seed)?,
            Check::TTail => verify_t_tail(a.s, a.trials, seed)?,
            Check::DegreeTail => degree_tail_check_in(
                a.s,
                a.trials,
                a.k_max,
                seed,
                a.half_width.unwrap_or(DEFAULT_DEGREE_HALF_WIDTH),
            )?,
            Check::Projection => verify_projection(
                a.s,
                a.trials,
                seed,
                ProjectionOptions {
                    blocks: a.blocks,
                    delta: a.delta,
                    alpha: parse_alpha(&a.alpha)?,
                },
            )?,
        };
        let summary = report.summary_json();
        match self.format() {
            Format::Csv => self.write(&report.to_csv())?,
            Format::Json => {
                let mut full = summary.clone();
                full["rows"] = serde_json::to_value(&report.cells)?;
                self.write_json(&full)?;
            }
        }
        self.note(&format!("{summary}\n"));
        Ok(if report.all_pass() {
            Status::Ok
        } else {
            Status::CheckFailed(format!("{} of {} cells failed", report.failures(), report.cells.len()))
        })
    }

    fn constants(&mut self, a: &crate::ConstantsArgs) -> Result<Status> {
        let value = match a.which {
            Constants::BetaC => serde_json::to_value(beta_c_pipeline(a.alpha, a.d)?)?,
            Constants::CertifyDelta => {
                let s = a.s.ok_or_else(|| anyhow!("--s is required for certify-delta"))?;
                let beta = match a.log2_beta {
                    Some(l) => Log2::from_log2(l),
                    None => beta_c_pipeline(2.5, 1)?.beta_c / Log2::from_value(2.0),
                };
                let cert = certified_delta(s, beta)?;
                let mut v = serde_json::to_value(&cert)?;
                v["holds"] = json!(cert.holds());
                v["minimal"] = json!(cert.is_minimal());
                v
            }
        };
        let Value::Object(map) = &value else {
            unreachable!("constants serialize as objects")
        };
        let width = map.keys().map(String::len).max().unwrap_or(0);
        let mut table = String::new();
        for (k, v) in map {
            let _ = writeln!(table, "{k:<width$}  {v}");
        }
        match self.format() {
            Format::Json => self.write_json(&value)?,
            Format::Csv => {
                let mut out = String::from("name,value\n");
                for (k, v) in map {
                    let _ = writeln!(out, "{k},{v}");
                }
                self.write(&out)?;
            }
        }
        self.note(&table);
        Ok(Status::Ok)
    }

    fn survival(&mut self, a: &crate::SurvivalArgs) -> Result<Status> {
        let seed = self.seed()?;
        let g = self.load(&a.source)?;
        let origin = g.index_of(a.origin)?;
        let estimates: Vec<SurvivalEstimate> = if a.coupled {
            coupled_survival(&g, &a.lambda, origin, a.t_max, a.trials, seed)?
        } else {
            a.lambda
                .iter()
                .map(|&l| survival_probability(&g, l, origin, a.t_max, a.trials, seed))
                .collect::<lrcp::Result<_>>()?
        };
        for e in estimates.iter().filter(|e| !e.converged) {
            eprintln!(
                "warning: lambda={} estimate changes between t_max/2 ({}) and t_max ({}); horizon may be too short",
                e.lambda, e.p_half, e.p_hat
            );
        }
        match self.format() {
            Format::Csv => {
                let mut out = format!("{SURVIVAL_CSV_HEADER}\n");
                for e in &estimates {
                    out.push_str(&e.csv_row());
                    out.push('\n');
                }
                self.write(&out)?;
            }
            Format::Json => self.write_json(&estimates)?,
        }
        if let Some(path) = &a.trajectory {
            let lambda = a.lambda[0];
            let cfg = ContactConfig::new(lambda, a.t_max, vec![origin], derive_seed(seed, 0));
            let mut out = String::from("time,event_type,vertex,infected_count\n");
            let lo = g.lo();
            simulate_with(&g, &cfg, |ev, _| {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    ev.time,
                    ev.kind.as_str(),
                    lo + ev.vertex as i64,
                    ev.infected_count
                );
            })?;
            self.write_extra(path, &out)?;
        }
        Ok(Status::Ok)
    }

    fn threshold(&mut self, a: &crate::ThresholdArgs) -> Result<Status> {
        let seed = self.seed()?;
        if !(a.lambda_lo >= 0.0 && a.lambda_lo < a.lambda_hi) {
            bail!("need 0 <= --lambda-lo < --lambda-hi, got {} and {}", a.lambda_lo, a.lambda_hi);
        }
        let g = self.load(&a.source)?;
        let origin = g.index_of(a.origin)?;
        let mut opts = ThresholdOptions::new(origin, a.t_max, a.target, a.trials, (a.lambda_lo, a.lambda_hi), seed);
        opts.resolution = a.resolution;
        let est = match estimate_threshold(&g, &opts) {
            Ok(est) => est,
            Err(Error::InvalidBracket(msg)) => return Ok(Status::CheckFailed(format!("bracket invalid: {msg}"))),
            Err(e) => return Err(e.into()),
        };
        match self.format() {
            Format::Csv => {
                let mut out = String::from("lambda_hat,bracket_lo,bracket_hi,ambiguous,probes\n");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    est.lambda_hat,
                    est.bracket.0,
                    est.bracket.1,
                    est.ambiguous,
                    est.probes.len()
                );
                self.write(&out)?;
            }
            Format::Json => self.write_json(&est)?,
        }
        let lambdas = csv_f64(est.probes.iter().map(|p| p.lambda));
        self.note(&format!("lambda_hat={} probes={lambdas}\n", est.lambda_hat));
        if est.ambiguous {
            eprintln!("warning: the last probe's interval contains the target; more trials would sharpen the estimate");
        }
        Ok(Status::Ok)
    }
}
