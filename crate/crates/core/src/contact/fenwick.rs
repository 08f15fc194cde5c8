/// Fenwick tree over nonnegative integer weights with prefix search.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
    total: u64,
}

impl Fenwick {
    pub fn new(n: usize) -> Self {
        Self {
            tree: vec![0; n + 1],
            total: 0,
        }
    }

    pub fn add(&mut self, i: usize, delta: i64) {
        self.total = (self.total as i64 + delta) as u64;
        let mut k = i + 1;
        while k < self.tree.len() {
            self.tree[k] = (self.tree[k] as i64 + delta) as u64;
            k += k & k.wrapping_neg();
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Index `i` with `prefix(i) ≤ target < prefix(i + 1)`; requires `target < total`.
    pub fn find(&self, mut target: u64) -> usize {
        let mut pos = 0usize;
        let mut step = (self.tree.len()).next_power_of_two() / 2;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            step /= 2;
        }
        pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_inverts_prefix_sums() {
        let w = [3u64, 0, 5, 1, 0, 2];
        let mut f = Fenwick::new(w.len());
        for (i, &x) in w.iter().enumerate() {
            f.add(i, x as i64);
        }
        assert_eq!(f.total(), 11);
        let mut expected = Vec::new();
        for (i, &x) in w.iter().enumerate() {
            expected.extend(std::iter::repeat_n(i, x as usize));
        }
        for (t, &e) in expected.iter().enumerate() {
            assert_eq!(f.find(t as u64), e);
        }
        f.add(2, -5);
        assert_eq!(f.find(3), 3);
    }
}
