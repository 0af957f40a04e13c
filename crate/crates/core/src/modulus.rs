//! Node sets with multiplicities, the modulus `h(x) = prod (x - x_i)^m_i`,
//! and the zero-counting table behind the generalized Rolle argument.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// Relative distinctness tolerance for float nodes.
pub const FLOAT_NODE_REL: f64 = 1e-12;

/// Grid size used by [`verify_rolle_numeric`].
pub const ROLLE_GRID: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct Node<S> {
    pub x: S,
    pub multiplicity: usize,
}

/// Distinct nodes sorted ascending, each with multiplicity at least one,
/// optionally inside an interval `[a, b]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet<S> {
    nodes: Vec<Node<S>>,
    interval: Option<(S, S)>,
}

impl<S: Scalar> NodeSet<S> {
    pub fn new(pairs: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut nodes: Vec<Node<S>> = pairs
            .into_iter()
            .map(|(x, multiplicity)| Node { x, multiplicity })
            .collect();
        if nodes.is_empty() {
            return Err(Error::InvalidNodeSet(
                "at least one node is required".into(),
            ));
        }
        if let Some(node) = nodes.iter().find(|n| n.multiplicity == 0) {
            return Err(Error::InvalidNodeSet(format!(
                "node {} has multiplicity 0",
                node.x.render()
            )));
        }
        if nodes.iter().any(|n| !n.x.to_f64().is_finite()) {
            return Err(Error::InvalidNodeSet("nodes must be finite".into()));
        }
        nodes.sort_by(|a, b| a.x.partial_cmp(&b.x).expect("finite nodes are ordered"));

        let scale = 1.0 + nodes.iter().map(|n| n.x.to_f64().abs()).fold(0.0, f64::max);
        for pair in nodes.windows(2) {
            if (pair[1].x.clone() - pair[0].x.clone()).is_negligible(scale, FLOAT_NODE_REL) {
                return Err(Error::DuplicateNode(pair[1].x.render()));
            }
        }
        Ok(Self {
            nodes,
            interval: None,
        })
    }

    /// Attaches `[a, b]`; requires `a < b` and every node inside.
    pub fn with_interval(mut self, a: S, b: S) -> Result<Self> {
        if a >= b {
            return Err(Error::InvalidNodeSet(format!(
                "interval [{}, {}] is empty",
                a.render(),
                b.render()
            )));
        }
        if let Some(n) = self.nodes.iter().find(|n| n.x < a || n.x > b) {
            return Err(Error::InvalidNodeSet(format!(
                "node {} lies outside [{}, {}]",
                n.x.render(),
                a.render(),
                b.render()
            )));
        }
        self.interval = Some((a, b));
        Ok(self)
    }

    pub fn nodes(&self) -> &[Node<S>] {
        &self.nodes
    }

    pub fn interval(&self) -> Option<&(S, S)> {
        self.interval.as_ref()
    }

    /// Number of distinct nodes.
    pub fn r(&self) -> usize {
        self.nodes.len()
    }

    /// Total multiplicity, the degree of the modulus.
    pub fn n(&self) -> usize {
        self.nodes.iter().map(|n| n.multiplicity).sum()
    }

    pub fn min_x(&self) -> &S {
        &self.nodes[0].x
    }

    pub fn max_x(&self) -> &S {
        &self.nodes[self.nodes.len() - 1].x
    }

    /// The same nodes in another domain (interval dropped).
    pub fn map_domain<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Result<NodeSet<T>> {
        NodeSet::new(self.nodes.iter().map(|n| (f(&n.x), n.multiplicity)))
    }
}

impl<S: Scalar> fmt::Display for NodeSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .nodes
            .iter()
            .map(|n| format!("{}:{}", n.x.render(), n.multiplicity))
            .collect();
        f.write_str(&items.join(","))
    }
}

/// `h(x) = prod_i (x - x_i)^m_i`, monic of degree `n`.
pub fn build_modulus<S: Scalar>(ns: &NodeSet<S>) -> Polynomial<S> {
    ns.nodes.iter().fold(Polynomial::one(), |acc, node| {
        &acc * &Polynomial::linear_factor(&node.x).pow(node.multiplicity)
    })
}

/// `h(x) / (x - x_i)^m_i`.
pub fn cofactor<S: Scalar>(ns: &NodeSet<S>, i: usize) -> Polynomial<S> {
    ns.nodes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(Polynomial::one(), |acc, (_, node)| {
            &acc * &Polynomial::linear_factor(&node.x).pow(node.multiplicity)
        })
}

/// 1 if `u < v`, else 0.
pub fn sigma(u: usize, v: usize) -> usize {
    usize::from(u < v)
}

/// Entry `k` is `sum_i sum_{j<=k} sigma(j, m_i) - k`, the number of distinct
/// real zeros `h^(k)` is guaranteed to have, for `k = 0..n-1`.
pub fn zero_count_table<S: Scalar>(ns: &NodeSet<S>) -> Vec<usize> {
    let mut running = 0usize;
    (0..ns.n())
        .map(|k| {
            running += ns
                .nodes
                .iter()
                .map(|node| sigma(k, node.multiplicity))
                .sum::<usize>();
            // the last entry equals sum m_i - (n - 1) = 1, so this never underflows
            running - k
        })
        .collect()
}

/// Counts distinct real zeros of `h^(k)` on `[min x_i, max x_i]`.
///
/// Nodes with `m_i > k` are known roots of multiplicity `m_i - k`; they are
/// counted directly and divided out, and the remaining factor is scanned for
/// sign changes on a 4096-point grid. The result is a lower bound on the true
/// count and should be at least `zero_count_table(ns)[k]`.
pub fn verify_rolle_numeric(ns: &NodeSet<f64>, k: usize) -> Result<usize> {
    let n = ns.n();
    if k >= n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must be below n = {n}"
        )));
    }
    let dh = build_modulus(ns).derivative(k);

    let known: Vec<&Node<f64>> = ns
        .nodes
        .iter()
        .filter(|node| node.multiplicity > k)
        .collect();
    let deflator = known.iter().fold(Polynomial::one(), |acc, node| {
        &acc * &Polynomial::linear_factor(&node.x).pow(node.multiplicity - k)
    });
    let (rest, _) = dh.divmod(&deflator)?;

    let (lo, hi) = (*ns.min_x(), *ns.max_x());
    let mut changes = 0;
    if hi > lo {
        let step = (hi - lo) / (ROLLE_GRID - 1) as f64;
        let mut last_sign = 0.0;
        for j in 0..ROLLE_GRID {
            let x = if j == ROLLE_GRID - 1 {
                hi
            } else {
                lo + step * j as f64
            };
            let v = rest.eval(&x);
            if v == 0.0 {
                continue;
            }
            let s = v.signum();
            if last_sign != 0.0 && s != last_sign {
                changes += 1;
            }
            last_sign = s;
        }
    }
    Ok(known.len() + changes)
}
