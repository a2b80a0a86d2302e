use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// Matching enumeration is refused above this many edges.
pub const MATCHING_EDGE_CAP: usize = 20;

/// Optimal fractional edge colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalColoring {
    /// `c_f(G)`.
    pub value: BigRational,
    /// Maximal matchings with their weights `ω(M) > 0`.
    pub weights: Vec<(EdgeSet, BigRational)>,
    /// Optimal edge weights of the dual packing problem.
    pub dual: Vec<BigRational>,
}

/// All inclusion-maximal matchings, in lexicographic order of their
/// sorted edge lists.
pub fn maximal_matchings(g: &Graph) -> Result<Vec<EdgeSet>> {
    if g.m() > MATCHING_EDGE_CAP {
        return Err(Error::SearchCapExceeded(format!(
            "{} edges exceed the matching enumeration cap of {MATCHING_EDGE_CAP}",
            g.m()
        )));
    }
    fn go(g: &Graph, e: usize, used: &mut Vec<bool>, cur: &mut EdgeSet, out: &mut Vec<EdgeSet>) {
        if e == g.m() {
            let maximal = (0..g.m()).all(|f| {
                let (u, v) = g.endpoints(f);
                cur.contains(f) || used[u] || used[v]
            });
            if maximal {
                out.push(cur.clone());
            }
            return;
        }
        let (u, v) = g.endpoints(e);
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            cur.insert(e);
            go(g, e + 1, used, cur, out);
            cur.remove(e);
            used[u] = false;
            used[v] = false;
        }
        go(g, e + 1, used, cur, out);
    }
    let mut out = Vec::new();
    go(g, 0, &mut vec![false; g.n()], &mut EdgeSet::new(), &mut out);
    Ok(out)
}

/// Fractional chromatic index: the minimum of `Σ ω(M)` over weightings of
/// maximal matchings covering every edge at least once.
///
/// Solves the dual packing problem `max Σ y_e` subject to `Σ_{e∈M} y_e <= 1`
/// with an exact simplex (Bland's rule), reads the primal weights off the
/// final dictionary and checks both solutions before returning.
pub fn fractional_chromatic_index(g: &Graph) -> Result<FractionalColoring> {
    if g.m() == 0 {
        return Ok(FractionalColoring {
            value: BigRational::zero(),
            weights: Vec::new(),
            dual: Vec::new(),
        });
    }
    let matchings = maximal_matchings(g)?;
    let rows: Vec<Vec<usize>> = matchings.iter().map(EdgeSet::to_vec).collect();
    let mut dict = Dictionary::new(g.m(), &rows);
    dict.solve();
    let (dual, omega) = dict.solutions();
    let value = dict.objective.clone();

    // dual feasibility: every matching carries total weight at most 1
    let one = BigRational::one();
    for row in &rows {
        let load: BigRational = row.iter().map(|&e| &dual[e]).sum();
        if load > one || dual.iter().any(Signed::is_negative) {
            return Err(Error::Postcondition("packing solution infeasible".into()));
        }
    }
    // primal feasibility: every edge covered at least once
    for e in 0..g.m() {
        let cover: BigRational = matchings
            .iter()
            .zip(&omega)
            .filter(|(mm, _)| mm.contains(e))
            .map(|(_, w)| w)
            .sum();
        if cover < one {
            return Err(Error::Postcondition(format!("edge {e} covered by {cover} < 1")));
        }
    }
    // equal objectives certify optimality of both
    let primal: BigRational = omega.iter().sum();
    let packed: BigRational = dual.iter().sum();
    if primal != value || packed != value {
        return Err(Error::Postcondition(format!(
            "duality gap: primal {primal}, dual {packed}, dictionary {value}"
        )));
    }
    let weights = matchings
        .into_iter()
        .zip(omega)
        .filter(|(_, w)| w.is_positive())
        .collect();
    Ok(FractionalColoring {
        value,
        weights,
        dual,
    })
}

/// Simplex dictionary for `max c·y` s.t. `A y + slack = 1`, `y, slack >= 0`.
/// Variables `0..n` are structural, `n..n+rows` are slacks.
/// Row `i` reads `basic[i] = rhs[i] - Σ_j a[i][j] * nonbasic[j]` and the
/// objective reads `z = objective + Σ_j cost[j] * nonbasic[j]`.
struct Dictionary {
    n: usize,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    a: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    cost: Vec<BigRational>,
    objective: BigRational,
}

impl Dictionary {
    fn new(n: usize, rows: &[Vec<usize>]) -> Self {
        let a = rows
            .iter()
            .map(|row| {
                let mut coeffs = vec![BigRational::zero(); n];
                for &e in row {
                    coeffs[e] = BigRational::one();
                }
                coeffs
            })
            .collect();
        Dictionary {
            n,
            basic: (n..n + rows.len()).collect(),
            nonbasic: (0..n).collect(),
            a,
            rhs: vec![BigRational::one(); rows.len()],
            cost: vec![BigRational::one(); n],
            objective: BigRational::zero(),
        }
    }

    fn solve(&mut self) {
        loop {
            // Bland: entering variable of smallest index with positive cost
            let Some(col) = (0..self.nonbasic.len())
                .filter(|&j| self.cost[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j])
            else {
                return;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.basic.len() {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.a[i][col];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basic[i] < self.basic[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave.expect("packing problem is bounded");
            self.pivot(row, col);
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c].clone();
        // solve row r for the entering variable
        let mut new_row: Vec<BigRational> = self.a[r].iter().map(|x| x / &p).collect();
        new_row[c] = BigRational::one() / &p;
        let new_rhs = &self.rhs[r] / &p;
        for i in 0..self.basic.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for j in 0..new_row.len() {
                if j == c {
                    self.a[i][j] = -(&f * &new_row[c]);
                } else if !new_row[j].is_zero() {
                    self.a[i][j] -= &f * &new_row[j];
                }
            }
            self.rhs[i] -= &f * &new_rhs;
        }
        let f = self.cost[c].clone();
        for j in 0..new_row.len() {
            if j == c {
                self.cost[j] = -(&f * &new_row[c]);
            } else if !new_row[j].is_zero() {
                self.cost[j] -= &f * &new_row[j];
            }
        }
        self.objective += &f * &new_rhs;
        self.a[r] = new_row;
        self.rhs[r] = new_rhs;
        std::mem::swap(&mut self.basic[r], &mut self.nonbasic[c]);
    }

    /// Structural values and slack shadow prices.
    fn solutions(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut y = vec![BigRational::zero(); self.n];
        for (i, &b) in self.basic.iter().enumerate() {
            if b < self.n {
                y[b] = self.rhs[i].clone();
            }
        }
        let mut omega = vec![BigRational::zero(); self.basic.len()];
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if v >= self.n {
                omega[v - self.n] = -self.cost[j].clone();
            }
        }
        (y, omega)
    }
}
