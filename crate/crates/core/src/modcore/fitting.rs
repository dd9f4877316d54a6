//! Ideals of minors, assembled block by block.
//!
//! For a matrix whose nonzero pattern splits into connected blocks `A_c`,
//! `I_k(A) = sum over j_1+...+j_m = k of prod_c I_{j_c}(A_c)`, which avoids
//! enumerating the (mostly vanishing) minors of a direct sum.

use crate::arith::{Field, Minors, Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::staircase::MonomialIdeal;
use crate::trunc::TruncatedIdeal;

/// Reduces a generator list: normalized, deduplicated, and minimal when the
/// ideal is monomial or certifiably of finite colength.
fn minimal_gens(field: Field, gens: Vec<Poly>) -> Vec<Poly> {
    let mut gens: Vec<Poly> = gens.into_iter().filter(|p| !p.is_zero()).map(|p| p.normalized()).collect();
    if gens.iter().any(|p| !p.constant_term().is_zero()) {
        return vec![Poly::one(field)];
    }
    if let Some(Ok(mono)) = MonomialIdeal::from_polys(&gens) {
        return mono.to_polys(field);
    }
    gens.sort_by_cached_key(|p| p.to_string());
    gens.dedup();
    match TruncatedIdeal::new(field, gens.clone()) {
        Ok(i) => i.generators(),
        Err(_) => gens,
    }
}

fn product(field: Field, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    minimal_gens(field, a.iter().flat_map(|f| b.iter().map(move |g| f.mul(g))).collect())
}

/// Generators of `I_k(A)`; `None` for the zero ideal.
pub fn fitting_generators(a: &PolyMatrix, k: i64) -> Option<Vec<Poly>> {
    let field = a.field();
    if k <= 0 {
        return Some(vec![Poly::one(field)]);
    }
    let k = k as usize;
    // acc[j] = I_j of the blocks seen so far.
    let mut acc: Vec<Option<Vec<Poly>>> = vec![None; k + 1];
    acc[0] = Some(vec![Poly::one(field)]);
    for (rows, cols) in a.components() {
        let block = a.submatrix(&rows, &cols);
        let jmax = rows.len().min(cols.len()).min(k);
        let mut local: Vec<Vec<Poly>> = vec![vec![Poly::one(field)]];
        for j in 1..=jmax {
            match block.minors(j as i64) {
                Minors::List(l) => local.push(minimal_gens(field, l)),
                Minors::Unit => unreachable!("j >= 1"),
            }
        }
        let mut next: Vec<Option<Vec<Poly>>> = vec![None; k + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            let mut gens: Vec<Poly> = Vec::new();
            for (j, lj) in local.iter().enumerate().take(total + 1) {
                if lj.is_empty() {
                    continue;
                }
                if let Some(prev) = &acc[total - j] {
                    gens.extend(product(field, prev, lj));
                }
            }
            if !gens.is_empty() {
                *slot = Some(minimal_gens(field, gens));
            }
        }
        acc = next;
    }
    acc[k].take()
}

/// `I_k(A)`, the unit ideal for `k <= 0`.
pub fn fitting(a: &PolyMatrix, k: i64) -> Result<TruncatedIdeal> {
    match fitting_generators(a, k) {
        Some(gens) => TruncatedIdeal::new(a.field(), gens),
        None => Err(Error::ZeroIdeal(format!("I_{k} of a {}x{} matrix vanishes", a.nrows(), a.ncols()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    const Q: Field = Field::Rational;

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(Q, rows.iter().map(|r| r.iter().map(|s| parse_poly(s, Q).unwrap()).collect()).collect())
            .unwrap()
    }

    fn ideal(gens: &[&str]) -> TruncatedIdeal {
        TruncatedIdeal::new(Q, gens.iter().map(|s| parse_poly(s, Q).unwrap()).collect()).unwrap()
    }

    #[test]
    fn fitting_examples() {
        let a = mat(&[&["y", "0"], &["-x^2", "y"], &["0", "-x"]]);
        assert!(fitting(&a, 2).unwrap().equals(&ideal(&["x^3", "x*y", "y^2"])));
        assert!(fitting(&a, 1).unwrap().equals(&ideal(&["x", "y"])));
        assert!(fitting(&a, 0).unwrap().is_unit());
        assert!(fitting(&a, -3).unwrap().is_unit());
        assert!(matches!(fitting(&a, 3), Err(Error::ZeroIdeal(_))));
    }

    #[test]
    fn blocks_agree_with_direct_minors() {
        let a = mat(&[&["y", "0"], &["-x", "y"], &["0", "-x"]]);
        let b = mat(&[&["y^2", "0"], &["-x", "y"], &["0", "-x^3"]]);
        let d = a.block_diagonal(&b);
        for k in 1..=4 {
            let blocks = fitting(&d, k).unwrap();
            let Minors::List(all) = d.minors(k) else { panic!() };
            let direct = TruncatedIdeal::new(Q, all).unwrap();
            assert!(blocks.equals(&direct), "k = {k}");
        }
    }

    #[test]
    fn dense_block_stays_whole() {
        let a = mat(&[&["x", "y^2"], &["y", "x^2 + y"]]);
        let Some(g) = fitting_generators(&a, 2) else { panic!() };
        assert_eq!(g.len(), 1);
        assert_eq!(g[0], a.determinant().unwrap().normalized());
    }
}
