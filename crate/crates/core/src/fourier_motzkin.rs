//! Fourier–Motzkin elimination for systems of strict and non-strict linear
//! inequalities over the rationals.
//!
//! This is deliberately independent of [`crate::lp`]: it is the oracle the
//! simplex-based dominance search is checked against.

use std::collections::BTreeSet;

use crate::rational::Rational;

/// `coeffs·w + constant > 0` (strict) or `≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Inequality {
    /// Scales so the first nonzero entry has absolute value one, which lets
    /// duplicate rows be removed structurally.
    fn normalised(mut self) -> Inequality {
        let lead = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(Rational::abs);
        if let Some(lead) = lead {
            let inv = lead.recip();
            for c in self.coeffs.iter_mut() {
                *c *= &inv;
            }
            self.constant *= &inv;
        }
        self
    }
}

/// Decides whether some real `w` satisfies every inequality.
pub fn feasible(system: Vec<Inequality>) -> bool {
    let vars = system.first().map_or(0, |q| q.coeffs.len());
    let mut current: BTreeSet<Inequality> = system.into_iter().map(Inequality::normalised).collect();
    for v in (0..vars).rev() {
        let mut next = BTreeSet::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for q in current {
            match q.coeffs[v].signum() {
                1 => pos.push(q),
                -1 => neg.push(q),
                _ => {
                    next.insert(q);
                }
            }
        }
        for p in &pos {
            for n in &neg {
                // a_p > 0 > a_n: (−a_n)·p + a_p·n cancels variable v
                let (ap, an) = (&p.coeffs[v], -&n.coeffs[v]);
                let coeffs: Vec<Rational> = p.coeffs.iter().zip(&n.coeffs).map(|(x, y)| &an * x + ap * y).collect();
                let constant = &an * &p.constant + ap * &n.constant;
                next.insert(Inequality { coeffs, constant, strict: p.strict || n.strict }.normalised());
            }
        }
        current = next;
    }
    current
        .iter()
        .all(|q| if q.strict { q.constant.is_positive() } else { !q.constant.is_negative() })
}

/// Is there a probability vector `w` over the columns of `gaps` with
/// `Σ_y w_y gaps[s][y] > 0` for every row `s`?
///
/// Rows are opponent profiles and columns candidate strategies. With no rows
/// the answer is `true` (vacuous); with no columns it is `false`.
pub fn strictly_positive_mixture(gaps: &[Vec<Rational>]) -> bool {
    let k = match gaps.first() {
        Some(row) => row.len(),
        None => return true,
    };
    if k == 0 {
        return false;
    }
    // w_{k-1} = 1 − Σ_{j<k-1} w_j; remaining unknowns w_0..w_{k-2}
    let vars = k - 1;
    let mut system = Vec::new();
    for j in 0..vars {
        let mut coeffs = vec![Rational::zero(); vars];
        coeffs[j] = Rational::one();
        system.push(Inequality { coeffs, constant: Rational::zero(), strict: false });
    }
    system.push(Inequality { coeffs: vec![-Rational::one(); vars], constant: Rational::one(), strict: false });
    for row in gaps {
        let last = &row[k - 1];
        let coeffs = (0..vars).map(|j| &row[j] - last).collect();
        system.push(Inequality { coeffs, constant: last.clone(), strict: true });
    }
    if vars == 0 {
        return system.iter().all(|q| if q.strict { q.constant.is_positive() } else { !q.constant.is_negative() });
    }
    feasible(system)
}
