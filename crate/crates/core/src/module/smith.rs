//! Smith normal form over Q[x], used only as an independent check on the
//! Bass torsion of univariate modules.

use crate::error::{Error, Result};
use crate::gb::{Matrix, Vector};
use crate::poly::Poly;

use super::FPModule;

/// Torsion part of a univariate module read off its Smith form.
#[derive(Debug, Clone)]
pub struct SmithTorsion {
    /// Monic nonunit invariant factors, each dividing the next.
    pub invariant_factors: Vec<Poly>,
    pub free_rank: usize,
    /// `⊕ R/(d_i)`.
    pub module: FPModule,
}

impl SmithTorsion {
    pub fn qdim(&self) -> u64 {
        self.invariant_factors
            .iter()
            .map(|d| d.total_degree().unwrap_or(0))
            .sum()
    }
}

/// Euclidean division in Q[x]: `a = q·b + r` with `deg r < deg b`.
pub fn univariate_div_rem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    if a.ring().nvars() != 1 {
        return Err(Error::UnivariateOnly);
    }
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let ring = a.ring();
    let (bc, bm) = b.leading_term(Default::default())?;
    let bc_inv = bc.inv()?;
    let mut q = Poly::zero(ring);
    let mut r = a.clone();
    while !r.is_zero() {
        let (rc, rm) = r.leading_term(Default::default())?;
        if !bm.divides(&rm) {
            break;
        }
        let t = Poly::monomial(ring, &rc * &bc_inv, bm.quotient_of(&rm));
        q = &q + &t;
        r = &r - &(&t * b);
    }
    Ok((q, r))
}

fn degree(p: &Poly) -> u64 {
    p.total_degree().unwrap_or(0)
}

/// Diagonalizes the relation matrix of `m` by row and column operations and
/// returns the torsion summand `⊕ R/(d_i)`.
pub fn smith_torsion_oracle(m: &FPModule) -> Result<SmithTorsion> {
    let ring = m.ring().clone();
    if ring.nvars() != 1 {
        return Err(Error::UnivariateOnly);
    }
    let nrows = m.ngens();
    let mut a: Vec<Vec<Poly>> = m.relation_matrix().rows();
    let ncols = m.relations().len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest-degree nonzero pivot in the trailing block
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by_key(|&(i, j)| (degree(&a[i][j]), i, j));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut improved = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, rem) = univariate_div_rem(&a[i][t], &a[t][t])?;
                for j in t..ncols {
                    a[i][j] = &a[i][j] - &(&q * &a[t][j]);
                }
                if !rem.is_zero() {
                    a.swap(t, i);
                    improved = true;
                    break;
                }
            }
            if improved {
                continue;
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, rem) = univariate_div_rem(&a[t][j], &a[t][t])?;
                for row in a.iter_mut().skip(t) {
                    row[j] = &row[j] - &(&q * &row[t]);
                }
                if !rem.is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    improved = true;
                    break;
                }
            }
            if improved {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !univariate_div_rem(&a[i][j], &a[t][t]).map(|(_, r)| r.is_zero()).unwrap_or(true));
            match bad {
                Some((i, _)) => {
                    for j in t..ncols {
                        a[t][j] = &a[t][j] + &a[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].monic());
        t += 1;
    }
    let free_rank = nrows - diag.len();
    let invariant_factors: Vec<Poly> = diag.into_iter().filter(|d| !d.is_constant()).collect();
    let k = invariant_factors.len();
    let rels = invariant_factors
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut e = vec![Poly::zero(&ring); k];
            e[i] = d.clone();
            Vector::new(&ring, e)
        })
        .collect::<Result<Vec<_>>>()?;
    let module = FPModule::from_relation_matrix(&Matrix::from_cols(&ring, k, rels)?)?;
    Ok(SmithTorsion {
        invariant_factors,
        free_rank,
        module,
    })
}
