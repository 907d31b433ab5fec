use std::sync::Arc;

use super::ideal::Ideal;
use super::poly::{Poly, PolyRing};
use super::KernelError;

/// Determinant by Laplace expansion along the first row.
pub fn determinant(ring: &Arc<PolyRing>, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &determinant(ring, &minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    go(0, m, k, &mut cur, &mut out);
    out
}

/// The 0-th Fitting ideal of the module presented by `pres`: rows are
/// generators, columns are relations. Its vanishing locus is the support.
pub fn fitting0(ring: &Arc<PolyRing>, pres: &[Vec<Poly>]) -> Result<Ideal, KernelError> {
    let n = pres.len();
    if n == 0 {
        return Ok(Ideal::unit(ring));
    }
    let m = pres[0].len();
    if pres.iter().any(|r| r.len() != m) {
        return Err(KernelError::RaggedMatrix);
    }
    for p in pres.iter().flatten() {
        if **p.ring() != **ring {
            return Err(KernelError::AmbientMismatch);
        }
    }
    if m < n {
        return Ok(Ideal::zero(ring));
    }
    let mut minors = Vec::new();
    for cols in combinations(m, n) {
        let sub: Vec<Vec<Poly>> = pres.iter().map(|row| cols.iter().map(|c| row[*c].clone()).collect()).collect();
        let d = determinant(ring, &sub);
        if !d.is_zero() {
            minors.push(d);
        }
    }
    Ideal::new(ring, minors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Field;

    fn qxy() -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, vec!["x".into(), "y".into()]).unwrap()
    }

    fn mat(r: &Arc<PolyRing>, rows: &[&[&str]]) -> Vec<Vec<Poly>> {
        rows.iter().map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect()).collect()
    }

    #[test]
    fn cyclic_module() {
        let r = qxy();
        let f = fitting0(&r, &mat(&r, &[&["x"]])).unwrap();
        assert!(f.same_ideal(&Ideal::new(&r, vec![r.parse("x").unwrap()]).unwrap()).unwrap());
    }

    #[test]
    fn free_module_has_zero_fitting_ideal() {
        let r = qxy();
        let f = fitting0(&r, &[vec![]]).unwrap();
        assert!(f.is_zero());
        assert!(fitting0(&r, &[]).unwrap().is_unit().unwrap());
    }

    #[test]
    fn rotation_matrix() {
        let r = qxy();
        let f = fitting0(&r, &mat(&r, &[&["x", "y"], &["-y", "x"]])).unwrap();
        assert!(f.same_ideal(&Ideal::new(&r, vec![r.parse("x^2 + y^2").unwrap()]).unwrap()).unwrap());
    }

    #[test]
    fn direct_sum_multiplies() {
        let r = qxy();
        let a = mat(&r, &[&["x", "y^2"]]);
        let b = mat(&r, &[&["x - y"]]);
        let sum = mat(&r, &[&["x", "y^2", "0"], &["0", "0", "x - y"]]);
        let fa = fitting0(&r, &a).unwrap();
        let fb = fitting0(&r, &b).unwrap();
        let fs = fitting0(&r, &sum).unwrap();
        assert!(fs.same_ideal(&fa.product(&fb).unwrap()).unwrap());
    }

    #[test]
    fn ragged_rows_rejected() {
        let r = qxy();
        let bad = vec![vec![r.var(0)], vec![]];
        assert_eq!(fitting0(&r, &bad).unwrap_err(), KernelError::RaggedMatrix);
    }
}
