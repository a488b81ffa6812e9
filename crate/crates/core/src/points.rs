//! Deterministic enumeration of integer points, used wherever a proof picks "some
//! point where ... holds".

use alloc::vec;
use alloc::vec::Vec;

/// Integer points of `Z^d` in shells of growing max-norm `0, 1, 2, ...`; inside a
/// shell coordinates run over `0, 1, -1, 2, -2, ...` with the last coordinate fastest.
#[derive(Debug, Clone)]
pub struct IntegerPoints {
    dim: usize,
    radius: i64,
    shell: Vec<Vec<i64>>,
    pos: usize,
}

impl IntegerPoints {
    pub fn new(dim: usize) -> Self {
        IntegerPoints { dim, radius: 0, shell: vec![vec![0; dim]], pos: 0 }
    }

    fn build_shell(&mut self) {
        let r = self.radius;
        let values: Vec<i64> =
            core::iter::once(0).chain((1..=r).flat_map(|v| [v, -v])).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.dim];
        loop {
            let p: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
            if p.iter().any(|v| v.abs() == r) {
                out.push(p);
            }
            let mut k = self.dim;
            loop {
                if k == 0 {
                    self.shell = out;
                    self.pos = 0;
                    return;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl Iterator for IntegerPoints {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.dim == 0 {
            return None;
        }
        while self.pos >= self.shell.len() {
            self.radius += 1;
            self.build_shell();
        }
        self.pos += 1;
        Some(self.shell[self.pos - 1].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shells_are_complete_and_distinct() {
        let pts: Vec<_> = IntegerPoints::new(2).take(25).collect();
        assert_eq!(pts[0], vec![0, 0]);
        assert_eq!(pts[1], vec![0, 1]);
        // 1 + 8 + 16 points in shells 0, 1, 2
        for p in &pts {
            assert!(p.iter().all(|v| v.abs() <= 2));
        }
        let mut sorted = pts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 25);
    }
}
