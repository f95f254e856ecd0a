//! Joint eigenspaces of commuting Hecke operators and their grouping into
//! Galois orbits.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::characters::DirichletChar;
use crate::error::{input, Result};
use crate::field::{ExtField, FieldElement};
use crate::matrix::Matrix;
use crate::poly::{enlarge_r_error, root_report};

/// An operator label T(l, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub l: u64,
    pub k: u8,
}

impl Label {
    pub fn new(l: u64, k: u8) -> Label {
        Label { l, k }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.l, self.k)
    }
}

/// Square matrices of a common size, one per label.
#[derive(Clone, Debug)]
pub struct OperatorFamily {
    field: Arc<ExtField>,
    dim: usize,
    labels: Vec<Label>,
    matrices: Vec<Matrix>,
}

impl OperatorFamily {
    pub fn new(field: Arc<ExtField>, labels: Vec<Label>, matrices: Vec<Matrix>) -> Result<Self> {
        if labels.len() != matrices.len() {
            return input("one matrix per label is required");
        }
        let dim = matrices.first().map_or(0, Matrix::rows);
        if matrices.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return input("all operators must be square of the same size");
        }
        let mut seen = labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != labels.len() {
            return input("operator labels must be distinct");
        }
        Ok(OperatorFamily { field, dim, labels, matrices })
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// The same family with operators in another order.
    pub fn permuted(&self, order: &[usize]) -> OperatorFamily {
        OperatorFamily {
            field: self.field.clone(),
            dim: self.dim,
            labels: order.iter().map(|&i| self.labels[i]).collect(),
            matrices: order.iter().map(|&i| self.matrices[i].clone()).collect(),
        }
    }
}

/// Pairs of labels whose operators fail to commute.
pub fn check_commuting(family: &OperatorFamily) -> Vec<(Label, Label)> {
    let f = &family.field;
    let n = family.matrices.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&family.matrices[i], &family.matrices[j]);
            if a.mul(f, b) != b.mul(f, a) {
                out.push((family.labels[i], family.labels[j]));
            }
        }
    }
    out
}

/// Eigenvalues indexed by label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Eigensystem {
    pub values: BTreeMap<Label, FieldElement>,
}

impl Eigensystem {
    /// The values in label order, for comparisons.
    pub fn value_list(&self) -> Vec<FieldElement> {
        self.values.values().cloned().collect()
    }

    pub fn frobenius(&self, f: &ExtField, times: usize) -> Eigensystem {
        Eigensystem {
            values: self.values.iter().map(|(l, v)| (*l, f.frobenius_pow(v, times))).collect(),
        }
    }

    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|(l, v)| format!("{} {} {}", l.l, l.k, v)).collect();
        parts.join("; ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEigenspace {
    pub eigensystem: Eigensystem,
    /// Basis vectors in the ambient space.
    pub basis: Vec<Vec<FieldElement>>,
    pub hecke_mult: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub spaces: Vec<JointEigenspace>,
    /// False when some restriction had an eigenspace smaller than the
    /// algebraic multiplicity; the spaces are then generalized eigenspaces.
    pub semisimple: bool,
}

struct Subspace {
    basis: Matrix,
    eigensystem: Eigensystem,
}

/// Restriction of `t` to the invariant subspace spanned by the columns of
/// `b`, in the coordinates of those columns.
fn restrict(f: &ExtField, t: &Matrix, b: &Matrix) -> Matrix {
    let m = b.cols();
    let (_, pivots) = b.transpose().rref(f);
    let r = Matrix::from_rows(pivots.iter().map(|&i| b.row(i).to_vec()).collect());
    let rinv = r.inverse(f).expect("basis restricted to pivot rows is invertible");
    let tb = t.mul(f, b);
    let tbp = Matrix::from_rows(pivots.iter().map(|&i| tb.row(i).to_vec()).collect());
    let out = rinv.mul(f, &tbp);
    debug_assert_eq!(out.rows(), m);
    out
}

fn matrix_pow(f: &ExtField, a: &Matrix, e: usize) -> Matrix {
    let mut acc = Matrix::identity(f, a.rows());
    for _ in 0..e {
        acc = acc.mul(f, a);
    }
    acc
}

/// Refine the whole space by each operator in turn.
pub fn joint_eigenspaces(family: &OperatorFamily) -> Result<Decomposition> {
    let bad = check_commuting(family);
    if !bad.is_empty() {
        let pairs: Vec<String> = bad.iter().map(|(a, b)| format!("{a}/{b}")).collect();
        return input(format!("operators do not commute: {}", pairs.join(", ")));
    }
    let f = family.field.clone();
    let mut semisimple = true;
    let mut current = vec![Subspace {
        basis: Matrix::identity(&f, family.dim),
        eigensystem: Eigensystem::default(),
    }];
    if family.dim == 0 {
        current.clear();
    }
    for (label, t) in family.labels.iter().zip(&family.matrices) {
        let mut next = Vec::new();
        for sub in current {
            let tw = restrict(&f, t, &sub.basis);
            let cp = tw.charpoly(&f);
            let rep = root_report(&f, &cp)?;
            if !rep.missing.is_empty() {
                return Err(enlarge_r_error(&f, &format!("characteristic polynomial of {label}"), &rep.missing));
            }
            let mut distinct: Vec<(FieldElement, usize)> = Vec::new();
            for a in rep.roots {
                match distinct.last_mut() {
                    Some((x, m)) if *x == a => *m += 1,
                    _ => distinct.push((a, 1)),
                }
            }
            for (a, mult) in distinct {
                let shifted = tw.sub_scalar(&f, &a);
                let mut ker = shifted.kernel(&f);
                if ker.len() < mult {
                    semisimple = false;
                    ker = matrix_pow(&f, &shifted, mult).kernel(&f);
                }
                let kmat = Matrix::from_cols(&f, tw.rows(), &ker);
                let mut es = sub.eigensystem.clone();
                es.values.insert(*label, a);
                next.push(Subspace { basis: sub.basis.mul(&f, &kmat), eigensystem: es });
            }
        }
        current = next;
    }
    let mut spaces: Vec<JointEigenspace> = current
        .into_iter()
        .map(|s| JointEigenspace {
            hecke_mult: s.basis.cols(),
            basis: (0..s.basis.cols()).map(|j| s.basis.col(j)).collect(),
            eigensystem: s.eigensystem,
        })
        .collect();
    spaces.sort_by(|a, b| a.eigensystem.cmp(&b.eigensystem));
    Ok(Decomposition { spaces, semisimple })
}

/// A Galois orbit of eigensystems under the stabilizer of the nebentype.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Indices into the input list.
    pub members: Vec<usize>,
    /// The member whose value list is lexicographically least.
    pub representative: usize,
    pub galois_mult: usize,
}

/// Group eigensystems into orbits of the subgroup of Gal(GF(p^r)/F_p)
/// fixing `eta`.
pub fn galois_orbits(systems: &[Eigensystem], eta: &DirichletChar) -> Vec<Orbit> {
    let f = eta.field().clone();
    let step = eta.stabilizer_step();
    let mut assigned = vec![false; systems.len()];
    let mut out = Vec::new();
    for i in 0..systems.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit = vec![systems[i].clone()];
        let mut cur = systems[i].frobenius(&f, step);
        while cur != systems[i] {
            orbit.push(cur.clone());
            cur = cur.frobenius(&f, step);
        }
        let members: Vec<usize> = (0..systems.len())
            .filter(|&j| !assigned[j] && orbit.contains(&systems[j]))
            .collect();
        for &j in &members {
            assigned[j] = true;
        }
        let representative = *members
            .iter()
            .min_by(|&&a, &&b| systems[a].value_list().cmp(&systems[b].value_list()))
            .unwrap();
        out.push(Orbit { members, representative, galois_mult: orbit.len() });
    }
    out
}

/// [`galois_orbits`] over the eigensystems of a decomposition.
pub fn space_orbits(spaces: &[JointEigenspace], eta: &DirichletChar) -> Vec<Orbit> {
    let systems: Vec<Eigensystem> = spaces.iter().map(|s| s.eigensystem.clone()).collect();
    galois_orbits(&systems, eta)
}
