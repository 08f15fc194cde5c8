"""Arbitrary-precision reference values for the bounds tests.

Run with `python3 bounds_oracle.py`; the printed values are frozen into
tests/bounds.rs. Everything is summed directly at high precision, without
the ratio-test tails or the expansions used by the Rust code.
"""
import mpmath as mp

mp.mp.prec = 2000


def log2(x):
    return mp.log(x, 2)


def cut_product(s, n):
    s = mp.mpf(s)
    total = mp.fsum((d - 1) * mp.log1p(-mp.power(d, -s)) for d in range(2, n + 1))
    return mp.e ** total


def degree_constant_upper(s, n=10_000):
    s = mp.mpf(s)
    head = mp.fsum(mp.power(d, -s) for d in range(1, n + 1))
    return 2 * (head + mp.power(n, 1 - s) / (s - 1))


def log2_f(c, delta):
    k = max(delta - 2, 0)
    term = mp.power(c, k) * mp.power(k + 2, 100) / mp.factorial(k)
    total = mp.mpf(0)
    while True:
        total += term
        nxt = term * c * mp.power(mp.mpf(k + 3) / (k + 2), 100) / (k + 1)
        k += 1
        term = nxt
        if k > delta + 50 and term < total * mp.mpf(2) ** -200:
            return log2(total)


def beta_c(alpha, d):
    alpha = mp.mpf(alpha)
    c = 2 * alpha * d + 1
    gamma = (4 * alpha * d) ** 2
    k0 = mp.floor(mp.mpf(2) ** (d + 1) * (c + 1))
    mu = (gamma - 1) / (2 * alpha) - 3 * d - 4 * alpha * d * d
    n0 = int(mp.floor(mp.log((d + 1) / mu) / mp.log(c)))
    n = max(n0, 1)
    log2_r = lambda n: mp.fsum(c ** j for j in range(1, n + 1))
    while 60 * k0 ** (alpha + 1) > mp.mpf(2) ** log2_r(n):
        n += 1
    eps = mp.mpf(2) ** (-2 * d * c ** (n + 1))
    x = mp.mpf(2) ** (-d * log2_r(n))
    inner = -mp.expm1(x * mp.log1p(-eps))
    beta = inner ** (1 / gamma) / 2
    return dict(c=c, gamma=gamma, k0=k0, mu=mu, n0=n0, n1=n, log2_R=log2_r(n), log2_eps=log2(eps), log2_beta=log2(beta))


def certificate(s, log2_beta):
    s = mp.mpf(s)
    p = 1 + (s - 102) / 200
    q = p / (p - 1)
    a = 100 * p - 1
    series = mp.fsum(mp.power(l, 2 - s) * mp.power(1 + l, a) for l in range(1, 200_000))
    c1 = 100 * p * (1 + series / (s - 2))
    pg = mp.e ** (2 / (2 - s))
    r = 1 - pg
    e = 99 * q
    moment = mp.mpf(0)
    i = 1
    while True:
        term = mp.power(i + 1, e) * mp.power(r, i - 1) * pg
        moment += term
        if i > 10 and term < moment * mp.mpf(2) ** -200:
            break
        i += 1
    m = moment ** (1 / q) * (1 + c1 ** (1 / p) / (1 - r ** (1 / p)))
    c = degree_constant_upper(s)
    target = 100 * log2_beta
    delta = 1
    while log2(m) + log2_f(c, delta) > target:
        delta += 1
    return dict(p=p, q=q, log2_C1=log2(c1), log2_moment=log2(moment), log2_M=log2(m), delta=delta,
                log2_f_delta=log2_f(c, delta), log2_f_prev=log2_f(c, delta - 1), log2_C=log2(c))


def show(name, v):
    print(f"{name} = {mp.nstr(v, 25)}")


if __name__ == "__main__":
    show("cut_product(4, 1e4)", cut_product(4, 10_000))
    show("cut_product(3, 400)", cut_product(3, 400))
    show("cut_product(4, 400)", cut_product(4, 400))
    show("C(3)", degree_constant_upper(3))
    show("zeta(3) * 2", 2 * mp.zeta(3))
    c103 = degree_constant_upper(103)
    show("log2 f(103, 500)", log2_f(c103, 500))
    show("log2 f(3, 10)", log2_f(degree_constant_upper(3), 10))
    b = beta_c(mp.mpf(5) / 2, 1)
    for k, v in b.items():
        show(f"beta_c.{k}", v)
    cert = certificate(103, b["log2_beta"] - 1)
    for k, v in cert.items():
        show(f"cert.{k}", v)
