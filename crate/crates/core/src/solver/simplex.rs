//! Exact two-phase tableau simplex over the unit box `[0,1]ⁿ`, with Bland's
//! rule for entering and leaving variables.

use num_traits::{One, Signed, Zero};

use super::affine::{Affine, Constraint, Relation};
use crate::syntax::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Optimal { value: Rational, point: Vec<Rational> },
}

impl LpOutcome {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Infeasible => None,
            LpOutcome::Optimal { point, .. } => Some(point),
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
    // columns >= first_artificial are artificial
    first_artificial: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize, zrow: &mut [Rational]) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(zrow);
        self.basis[r] = c;
    }

    /// `zrow[j] = c_B·A_j − c_j`, last entry the objective value.
    fn zrow(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut z: Vec<Rational> = (0..=self.ncols)
            .map(|j| if j < self.ncols { -&cost[j] } else { Rational::zero() })
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (zj, a) in z.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *zj += cb * a;
                }
            }
        }
        z
    }

    /// Maximizes `cost·z` over columns `< allowed`.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> Vec<Rational> {
        let mut z = self.zrow(cost);
        loop {
            let Some(c) = (0..allowed).find(|&j| z[j].is_negative()) else {
                return z;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // the box bounds every column, so some row always limits the step
            let (r, _) = best.expect("bounded program");
            self.pivot(r, c, &mut z);
        }
    }
}

/// Optimizes `objective` (or only tests feasibility when `None`) subject to
/// `constraints` and `0 ≤ xᵢ ≤ 1`.
pub fn solve(
    nvars: usize,
    constraints: &[Constraint],
    objective: Option<(&Affine, Sense)>,
) -> LpOutcome {
    // Each row: a·x (≤|=) b with b >= 0 after sign normalization.
    struct Row {
        coeffs: Vec<Rational>,
        rhs: Rational,
        kind: RowKind,
    }
    enum RowKind {
        Slack,
        Surplus,
        Equal,
    }
    let mut rows: Vec<Row> = Vec::new();
    for c in constraints {
        if c.expr.is_constant() {
            let ok = match c.rel {
                Relation::Le => !c.expr.constant.is_positive(),
                Relation::Eq => c.expr.constant.is_zero(),
            };
            if !ok {
                return LpOutcome::Infeasible;
            }
            continue;
        }
        let mut coeffs = c.expr.coeffs.clone();
        let mut rhs = -&c.expr.constant;
        let negate = rhs.is_negative();
        if negate {
            coeffs.iter_mut().for_each(|v| *v = -&*v);
            rhs = -rhs;
        }
        let kind = match (c.rel, negate) {
            (Relation::Eq, _) => RowKind::Equal,
            (Relation::Le, false) => RowKind::Slack,
            (Relation::Le, true) => RowKind::Surplus,
        };
        rows.push(Row { coeffs, rhs, kind });
    }
    for i in 0..nvars {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[i] = Rational::one();
        rows.push(Row { coeffs, rhs: Rational::one(), kind: RowKind::Slack });
    }

    let n_slack = rows.iter().filter(|r| !matches!(r.kind, RowKind::Equal)).count();
    let n_art = rows.iter().filter(|r| !matches!(r.kind, RowKind::Slack)).count();
    let first_artificial = nvars + n_slack;
    let ncols = first_artificial + n_art;

    let mut tab = Tableau {
        rows: Vec::with_capacity(rows.len()),
        basis: Vec::with_capacity(rows.len()),
        ncols,
        first_artificial,
    };
    let (mut next_slack, mut next_art) = (nvars, first_artificial);
    for row in rows {
        let mut line = vec![Rational::zero(); ncols + 1];
        for (j, v) in row.coeffs.into_iter().enumerate() {
            line[j] = v;
        }
        line[ncols] = row.rhs;
        match row.kind {
            RowKind::Slack => {
                line[next_slack] = Rational::one();
                tab.basis.push(next_slack);
                next_slack += 1;
            }
            RowKind::Surplus => {
                line[next_slack] = -Rational::one();
                next_slack += 1;
                line[next_art] = Rational::one();
                tab.basis.push(next_art);
                next_art += 1;
            }
            RowKind::Equal => {
                line[next_art] = Rational::one();
                tab.basis.push(next_art);
                next_art += 1;
            }
        }
        tab.rows.push(line);
    }

    if n_art > 0 {
        let cost: Vec<Rational> = (0..ncols)
            .map(|j| if j >= first_artificial { -Rational::one() } else { Rational::zero() })
            .collect();
        let z = tab.run(&cost, ncols);
        if z[ncols].is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive artificials out of the basis at level zero
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] >= tab.first_artificial {
                match (0..tab.first_artificial).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(c) => {
                        let mut dummy = vec![Rational::zero(); ncols + 1];
                        tab.pivot(r, c, &mut dummy);
                    }
                    None => {
                        tab.rows.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    let value = match objective {
        None => Rational::zero(),
        Some((obj, sense)) => {
            let sign = match sense {
                Sense::Max => Rational::one(),
                Sense::Min => -Rational::one(),
            };
            let mut cost = vec![Rational::zero(); ncols];
            for (j, c) in obj.coeffs.iter().enumerate() {
                cost[j] = &sign * c;
            }
            let z = tab.run(&cost, tab.first_artificial);
            &sign * &z[ncols] + &obj.constant
        }
    };
    let mut point = vec![Rational::zero(); nvars];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < nvars {
            point[b] = tab.rhs(i).clone();
        }
    }
    LpOutcome::Optimal { value, point }
}

pub fn feasible_point(nvars: usize, constraints: &[Constraint]) -> Option<Vec<Rational>> {
    match solve(nvars, constraints, None) {
        LpOutcome::Infeasible => None,
        LpOutcome::Optimal { point, .. } => Some(point),
    }
}
