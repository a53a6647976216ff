//! Reductive root data on a finite-rank cocharacter lattice.
//!
//! A datum is stored as a pair of integer matrices over `Z^n`: coroots as
//! columns, simple roots as covector rows.  The Cartan matrix is derived as
//! `roots * coroots`, so entry `(i, j)` is the pairing of root `i` with
//! coroot `j`.  Validation classifies the Cartan matrix against the finite
//! Dynkin catalogue; anything affine or indefinite is rejected.
//!
//! Node numbering inside each irreducible component follows the standard
//! Bourbaki tables (type B has its short root last, type C its long root
//! last, the type D fork is the last two nodes, the degree-three node of
//! type E is node 4).

use crate::lattice::{
    dot, solve_rational, IntMatrix, IntVec, QuotientLattice, Rat, RatVec,
};
use crate::{Error, Result};
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// The irreducible finite Dynkin families.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl SimpleType {
    /// Inclusive rank range in which the family is defined (avoiding the
    /// low-rank coincidences: B/C start at 2, D at 3).
    pub fn rank_range(self) -> (usize, usize) {
        match self {
            SimpleType::A => (1, usize::MAX),
            SimpleType::B | SimpleType::C => (2, usize::MAX),
            SimpleType::D => (3, usize::MAX),
            SimpleType::E => (6, 8),
            SimpleType::F => (4, 4),
            SimpleType::G => (2, 2),
        }
    }

    pub fn letter(self) -> char {
        match self {
            SimpleType::A => 'A',
            SimpleType::B => 'B',
            SimpleType::C => 'C',
            SimpleType::D => 'D',
            SimpleType::E => 'E',
            SimpleType::F => 'F',
            SimpleType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<SimpleType> {
        match c.to_ascii_uppercase() {
            'A' => Some(SimpleType::A),
            'B' => Some(SimpleType::B),
            'C' => Some(SimpleType::C),
            'D' => Some(SimpleType::D),
            'E' => Some(SimpleType::E),
            'F' => Some(SimpleType::F),
            'G' => Some(SimpleType::G),
            _ => None,
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Which lattice a simple constructor places between coroot and coweight.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Isogeny {
    /// Cocharacter lattice = coroot lattice (trivial fundamental group).
    SimplyConnected,
    /// Cocharacter lattice = coweight lattice (fundamental group = center dual).
    Adjoint,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => write!(f, "sc"),
            Isogeny::Adjoint => write!(f, "ad"),
        }
    }
}

/// One irreducible component of a Dynkin diagram, with its nodes listed in
/// Bourbaki order (as indices into the datum's simple roots).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynkinComponent {
    pub family: SimpleType,
    pub rank: usize,
    pub nodes: Vec<usize>,
}

impl DynkinComponent {
    pub fn label(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

/// Format a list of components as e.g. `"A2 x A2"`, `"1"` for none.
pub fn components_label(components: &[DynkinComponent]) -> String {
    if components.is_empty() {
        return "1".to_string();
    }
    let mut labels: Vec<String> = components.iter().map(|c| c.label()).collect();
    labels.sort();
    labels.join(" x ")
}

/// A root together with its coordinates in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root {
    /// The root as a covector on the cocharacter lattice.
    pub covector: IntVec,
    /// Coordinates in the simple-root basis (all >= 0 or all <= 0).
    pub coords: IntVec,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }
}

/// A reductive root datum: coroots as columns of an `n x r` matrix, simple
/// roots as rows of an `r x n` matrix, both bases of `Z^n`-dual pairs.
#[derive(Clone)]
pub struct RootDatum {
    name: String,
    coroots: IntMatrix,
    roots: IntMatrix,
    cartan: IntMatrix,
    components: Vec<DynkinComponent>,
}

impl RootDatum {
    /// Validate and build a datum from explicit matrices.
    pub fn new(name: impl Into<String>, coroots: IntMatrix, roots: IntMatrix) -> Result<RootDatum> {
        let n = coroots.rows();
        let r = coroots.cols();
        if roots.rows() != r || roots.cols() != n {
            return Err(Error::InvalidRootDatum(format!(
                "coroots are {}x{} but roots are {}x{}; expected {}x{}",
                n,
                r,
                roots.rows(),
                roots.cols(),
                r,
                n
            )));
        }
        if r > n {
            return Err(Error::InvalidRootDatum(format!(
                "{r} simple roots cannot be independent in rank {n}"
            )));
        }
        if coroots.rank() != r {
            return Err(Error::InvalidRootDatum(
                "coroot columns are linearly dependent".into(),
            ));
        }
        if roots.rank() != r {
            return Err(Error::InvalidRootDatum(
                "root rows are linearly dependent".into(),
            ));
        }
        let cartan = roots.mul(&coroots);
        let components = classify_cartan(&cartan)?;
        Ok(RootDatum { name: name.into(), coroots, roots, cartan, components })
    }

    /// A simple group of the given family, rank, and isogeny type.
    ///
    /// Simply connected: coroots are the standard basis, roots the Cartan
    /// rows.  Adjoint: the lattice is the coweight lattice, so coroots are
    /// the Cartan columns and roots the standard basis.
    pub fn simple(family: SimpleType, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
        let (lo, hi) = family.rank_range();
        if rank < lo || rank > hi {
            return Err(Error::InvalidSimpleType { family: family.letter(), rank });
        }
        let cartan = simple_cartan(family, rank);
        let (coroots, roots) = match isogeny {
            Isogeny::SimplyConnected => (IntMatrix::identity(rank), cartan.clone()),
            Isogeny::Adjoint => (cartan.clone(), IntMatrix::identity(rank)),
        };
        let name = format!("{}{} ({})", family, rank, isogeny);
        RootDatum::new(name, coroots, roots)
    }

    /// The general linear group of rank `n`: lattice `Z^n`, coroots
    /// `e_i - e_{i+1}`, roots the dual differences.
    pub fn gl(n: usize) -> Result<RootDatum> {
        if n == 0 {
            return Err(Error::InvalidRootDatum("GL of rank zero".into()));
        }
        let r = n - 1;
        let mut coroots = IntMatrix::zero(n, r);
        let mut roots = IntMatrix::zero(r, n);
        for j in 0..r {
            coroots.set(j, j, num::BigInt::one());
            coroots.set(j + 1, j, -num::BigInt::one());
            roots.set(j, j, num::BigInt::one());
            roots.set(j, j + 1, -num::BigInt::one());
        }
        RootDatum::new(format!("GL{n}"), coroots, roots)
    }

    /// Direct product: block sums of the lattices and root systems.
    pub fn product(left: &RootDatum, right: &RootDatum) -> Result<RootDatum> {
        let coroots = left.coroots.direct_sum(&right.coroots);
        let roots = left.roots.direct_sum(&right.roots);
        RootDatum::new(format!("{} x {}", left.name, right.name), coroots, roots)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Rank of the cocharacter lattice.
    pub fn lattice_rank(&self) -> usize {
        self.coroots.rows()
    }

    /// Number of simple roots (semisimple rank).
    pub fn num_simple_roots(&self) -> usize {
        self.coroots.cols()
    }

    pub fn coroot_matrix(&self) -> &IntMatrix {
        &self.coroots
    }

    pub fn root_matrix(&self) -> &IntMatrix {
        &self.roots
    }

    /// Cartan matrix: entry `(i, j)` is the pairing of simple root `i` with
    /// simple coroot `j`.
    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Irreducible Dynkin components with Bourbaki-ordered nodes.
    pub fn components(&self) -> &[DynkinComponent] {
        &self.components
    }

    /// Simple root `i` as a covector.
    pub fn simple_root(&self, i: usize) -> IntVec {
        self.roots.row(i)
    }

    /// Simple coroot `i` as a lattice vector.
    pub fn coroot(&self, i: usize) -> IntVec {
        self.coroots.col(i)
    }

    /// Pairing of simple root `i` with an arbitrary lattice vector.
    pub fn pair_root(&self, i: usize, v: &[num::BigInt]) -> num::BigInt {
        dot(&self.simple_root(i), v)
    }

    /// All roots, generated as the Weyl orbit of the simple roots.
    ///
    /// Returned in a deterministic order (sorted by simple-root
    /// coordinates); each root carries its coordinates so positivity is a
    /// sign check.
    pub fn all_roots(&self) -> Vec<Root> {
        let r = self.num_simple_roots();
        let mut seen = std::collections::BTreeSet::new();
        let mut out: Vec<Root> = Vec::new();
        let mut frontier: Vec<Root> = (0..r)
            .map(|i| {
                let mut coords = vec![num::BigInt::zero(); r];
                coords[i] = num::BigInt::one();
                Root { covector: self.simple_root(i), coords }
            })
            .collect();
        for root in &frontier {
            seen.insert(root.coords.clone());
        }
        while let Some(root) = frontier.pop() {
            for i in 0..r {
                // Simple reflection on a covector: subtract (pairing with
                // coroot i) times root i; coordinates change in entry i only.
                let pairing = dot(&root.covector, &self.coroot(i));
                if pairing.is_zero() {
                    continue;
                }
                let alpha = self.simple_root(i);
                let covector: IntVec = root
                    .covector
                    .iter()
                    .zip(&alpha)
                    .map(|(b, a)| b - &pairing * a)
                    .collect();
                let mut coords = root.coords.clone();
                coords[i] -= &pairing;
                let reflected = Root { covector, coords };
                if seen.insert(reflected.coords.clone()) {
                    frontier.push(reflected.clone());
                    out.push(reflected);
                }
            }
        }
        let mut all: Vec<Root> = (0..r)
            .map(|i| {
                let mut coords = vec![num::BigInt::zero(); r];
                coords[i] = num::BigInt::one();
                Root { covector: self.simple_root(i), coords }
            })
            .collect();
        all.extend(out);
        all.sort_by(|a, b| a.coords.cmp(&b.coords));
        all.dedup_by(|a, b| a.coords == b.coords);
        all
    }

    /// The positive roots, in the same deterministic order.
    pub fn positive_roots(&self) -> Vec<Root> {
        self.all_roots().into_iter().filter(Root::is_positive).collect()
    }

    /// Fundamental coweights as covectors: `omega_i` pairs to `delta_ij`
    /// with coroot `j` and vanishes on a fixed integral complement of the
    /// saturated coroot span (so the choice is deterministic).
    pub fn fundamental_weights(&self) -> Vec<RatVec> {
        let n = self.lattice_rank();
        let r = self.num_simple_roots();
        // Complement basis: preimages (under the Smith row transform) of the
        // coordinate vectors beyond the coroot rank.
        let snf = crate::lattice::smith_normal_form(&self.coroots);
        let u_inv = crate::lattice::int_inverse(&snf.u)
            .expect("row transform of a Smith form is unimodular");
        let mut cols: Vec<IntVec> = (0..r).map(|j| self.coroots.col(j)).collect();
        for i in r..n {
            cols.push(u_inv.col(i));
        }
        let m = IntMatrix::from_cols(n, &cols);
        let mt = m.transpose();
        (0..r)
            .map(|i| {
                let mut rhs = vec![Rat::zero(); n];
                rhs[i] = Rat::one();
                solve_rational(&mt, &rhs)
                    .expect("complemented coroot basis is invertible")
            })
            .collect()
    }

    /// Fundamental group of the datum: cocharacters modulo the coroot lattice.
    pub fn pi1(&self) -> QuotientLattice {
        QuotientLattice::new(self.lattice_rank(), &self.coroots)
    }

    /// Order of the full Weyl group, from the classification of components.
    pub fn weyl_order(&self) -> u128 {
        self.components.iter().map(|c| weyl_order_of(c.family, c.rank)).product()
    }

    /// Classify the sub-diagram spanned by a set of nodes.
    pub fn classify_subset(&self, nodes: &[usize]) -> Result<Vec<DynkinComponent>> {
        for &i in nodes {
            if i >= self.num_simple_roots() {
                return Err(Error::NodeOutOfRange { index: i, rank: self.num_simple_roots() });
            }
        }
        let sub = self.cartan.submatrix(nodes, nodes);
        let mut comps = classify_cartan(&sub)?;
        for comp in &mut comps {
            for node in &mut comp.nodes {
                *node = nodes[*node];
            }
        }
        Ok(comps)
    }
}

/// Order of the Weyl group of one irreducible family.
pub fn weyl_order_of(family: SimpleType, rank: usize) -> u128 {
    fn fact(k: usize) -> u128 {
        (1..=k as u128).product()
    }
    match family {
        SimpleType::A => fact(rank + 1),
        SimpleType::B | SimpleType::C => (1u128 << rank) * fact(rank),
        SimpleType::D => (1u128 << (rank - 1)) * fact(rank),
        SimpleType::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            8 => 696_729_600,
            _ => unreachable!("E rank validated at construction"),
        },
        SimpleType::F => 1_152,
        SimpleType::G => 12,
    }
}

/// Number of positive roots of one irreducible family.
pub fn num_positive_roots_of(family: SimpleType, rank: usize) -> usize {
    match family {
        SimpleType::A => rank * (rank + 1) / 2,
        SimpleType::B | SimpleType::C => rank * rank,
        SimpleType::D => rank * (rank - 1),
        SimpleType::E => match rank {
            6 => 36,
            7 => 63,
            8 => 120,
            _ => unreachable!("E rank validated at construction"),
        },
        SimpleType::F => 24,
        SimpleType::G => 6,
    }
}

/// The Bourbaki Cartan matrix of an irreducible family (0-based indices).
fn simple_cartan(family: SimpleType, rank: usize) -> IntMatrix {
    let mut c = IntMatrix::zero(rank, rank);
    let two = num::BigInt::from(2);
    let neg = |k: i64| num::BigInt::from(-k);
    for i in 0..rank {
        c.set(i, i, two.clone());
    }
    let edge = |c: &mut IntMatrix, i: usize, j: usize, down: i64, up: i64| {
        c.set(i, j, neg(down));
        c.set(j, i, neg(up));
    };
    match family {
        SimpleType::A => {
            for i in 0..rank.saturating_sub(1) {
                edge(&mut c, i, i + 1, 1, 1);
            }
        }
        SimpleType::B => {
            for i in 0..rank - 2 {
                edge(&mut c, i, i + 1, 1, 1);
            }
            // Short root last: it pairs to -2 against the long coroot.
            edge(&mut c, rank - 2, rank - 1, 2, 1);
        }
        SimpleType::C => {
            for i in 0..rank - 2 {
                edge(&mut c, i, i + 1, 1, 1);
            }
            edge(&mut c, rank - 2, rank - 1, 1, 2);
        }
        SimpleType::D => {
            for i in 0..rank - 2 {
                edge(&mut c, i, i + 1, 1, 1);
            }
            edge(&mut c, rank - 3, rank - 1, 1, 1);
        }
        SimpleType::E => {
            // Chain 1-3-4-5-... with node 2 hanging off node 4 (Bourbaki).
            let chain: Vec<usize> =
                std::iter::once(0).chain(2..rank).collect();
            for w in chain.windows(2) {
                edge(&mut c, w[0], w[1], 1, 1);
            }
            edge(&mut c, 1, 3, 1, 1);
        }
        SimpleType::F => {
            edge(&mut c, 0, 1, 1, 1);
            edge(&mut c, 1, 2, 2, 1);
            edge(&mut c, 2, 3, 1, 1);
        }
        SimpleType::G => {
            // Short root first (Bourbaki): the long root pairs to -3
            // against the short coroot.
            edge(&mut c, 0, 1, 1, 3);
        }
    }
    c
}

/// Classify an integer matrix as a finite-type Cartan matrix, returning the
/// irreducible components with Bourbaki-ordered nodes, or an error naming
/// the first violated condition.
pub fn classify_cartan(c: &IntMatrix) -> Result<Vec<DynkinComponent>> {
    let invalid = |msg: String| Error::InvalidRootDatum(msg);
    if c.rows() != c.cols() {
        return Err(invalid("Cartan matrix is not square".into()));
    }
    let r = c.rows();
    let small = |i: usize, j: usize| -> Result<i64> {
        let e = c.get(i, j);
        if e.abs() > num::BigInt::from(3) {
            return Err(invalid(format!("Cartan entry ({i},{j}) = {e} out of range")));
        }
        Ok(e.to_i64().expect("|entry| <= 3 fits i64"))
    };
    for i in 0..r {
        if small(i, i)? != 2 {
            return Err(invalid(format!("diagonal entry ({i},{i}) is not 2")));
        }
        for j in 0..r {
            if i == j {
                continue;
            }
            let e = small(i, j)?;
            if e > 0 {
                return Err(invalid(format!("off-diagonal entry ({i},{j}) is positive")));
            }
            if (e == 0) != (small(j, i)? == 0) {
                return Err(invalid(format!(
                    "entries ({i},{j}) and ({j},{i}) do not vanish together"
                )));
            }
        }
    }
    // Edge list with multiplicities m = c_ij * c_ji in {1, 2, 3}.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let down = small(i, j)?;
            let up = small(j, i)?;
            if down == 0 {
                continue;
            }
            let m = down * up;
            if m > 3 {
                return Err(invalid(format!(
                    "bond between {i} and {j} has multiplicity {m} (affine or worse)"
                )));
            }
            if down != -1 && up != -1 {
                return Err(invalid(format!(
                    "bond between {i} and {j} has no unit side"
                )));
            }
            adj[i].push(j);
            adj[j].push(i);
            edges.push((i, j, m));
        }
    }

    // Connected components.
    let mut comp_of = vec![usize::MAX; r];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..r {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut nodes = Vec::new();
        comp_of[start] = id;
        while let Some(x) = stack.pop() {
            nodes.push(x);
            for &y in &adj[x] {
                if comp_of[y] == usize::MAX {
                    comp_of[y] = id;
                    stack.push(y);
                }
            }
        }
        nodes.sort_unstable();
        comps.push(nodes);
    }

    let mut out = Vec::new();
    for nodes in comps {
        let k = nodes.len();
        let comp_edges: Vec<&(usize, usize, i64)> = edges
            .iter()
            .filter(|(i, _, _)| nodes.contains(i))
            .collect();
        if comp_edges.len() != k - 1 {
            return Err(invalid(format!(
                "component {nodes:?} contains a cycle"
            )));
        }
        let degree = |x: usize| adj[x].len();
        if let Some(&x) = nodes.iter().find(|&&x| degree(x) > 3) {
            return Err(invalid(format!("node {x} has degree {}", degree(x))));
        }
        let branch: Vec<usize> = nodes.iter().copied().filter(|&x| degree(x) == 3).collect();
        if branch.len() > 1 {
            return Err(invalid(format!(
                "component {nodes:?} has more than one branch node"
            )));
        }
        let multi: Vec<&&(usize, usize, i64)> =
            comp_edges.iter().filter(|(_, _, m)| *m > 1).collect();
        if multi.len() > 1 {
            return Err(invalid(format!(
                "component {nodes:?} has more than one multiple bond"
            )));
        }

        let component = if let Some(&&&(u, v, m)) = multi.first() {
            if !branch.is_empty() {
                return Err(invalid(format!(
                    "component {nodes:?} mixes a branch with a multiple bond"
                )));
            }
            classify_multibond_path(c, &nodes, &adj, u, v, m)?
        } else if let Some(&b) = branch.first() {
            classify_branched(&nodes, &adj, b)?
        } else {
            // Simply laced path: type A; orient from the smaller endpoint.
            let path = walk_path(&nodes, &adj)?;
            DynkinComponent { family: SimpleType::A, rank: k, nodes: path }
        };
        out.push(component);
    }
    out.sort_by(|a, b| a.nodes.cmp(&b.nodes));
    Ok(out)
}

/// Nodes of a path component in path order, starting from the endpoint with
/// the smaller index (deterministic).
fn walk_path(nodes: &[usize], adj: &[Vec<usize>]) -> Result<Vec<usize>> {
    if nodes.len() == 1 {
        return Ok(vec![nodes[0]]);
    }
    let mut ends: Vec<usize> = nodes.iter().copied().filter(|&x| adj[x].len() == 1).collect();
    if ends.len() != 2 {
        return Err(Error::InvalidRootDatum(format!(
            "component {nodes:?} is not a path"
        )));
    }
    ends.sort_unstable();
    let mut path = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while path.len() < nodes.len() {
        let next = *adj[cur]
            .iter()
            .find(|&&x| x != prev)
            .expect("path endpoint reached early");
        path.push(next);
        prev = cur;
        cur = next;
    }
    Ok(path)
}

/// Classify a path with a single multiple bond: B, C, F4, or G2.
fn classify_multibond_path(
    c: &IntMatrix,
    nodes: &[usize],
    adj: &[Vec<usize>],
    u: usize,
    v: usize,
    m: i64,
) -> Result<DynkinComponent> {
    let invalid = |msg: String| Error::InvalidRootDatum(msg);
    let k = nodes.len();
    let entry = |i: usize, j: usize| c.get(i, j).to_i64().expect("checked small");
    if m == 3 {
        if k != 2 {
            return Err(invalid(format!(
                "triple bond in a component of size {k}"
            )));
        }
        // Bourbaki G2: alpha_1 short, alpha_2 long, and the long root pairs
        // to -3 against the short coroot.
        let (short, long) = if entry(u, v) == -3 { (v, u) } else { (u, v) };
        return Ok(DynkinComponent { family: SimpleType::G, rank: 2, nodes: vec![short, long] });
    }
    // m == 2: a path with one double bond.
    let path = walk_path(nodes, adj)?;
    let pos = (0..k - 1)
        .find(|&t| {
            (path[t] == u && path[t + 1] == v) || (path[t] == v && path[t + 1] == u)
        })
        .expect("double bond lies on the path");
    let interior = pos > 0 && pos + 1 < k - 1;
    if interior {
        if k != 4 {
            return Err(invalid(format!(
                "interior double bond in a path of length {k}"
            )));
        }
        // F4: the long half comes first; entry(long, short) = -2 across the
        // double bond.
        let (a, b) = (path[1], path[2]);
        let ordered: Vec<usize> = if entry(a, b) == -2 {
            path.clone()
        } else {
            path.iter().rev().copied().collect()
        };
        return Ok(DynkinComponent { family: SimpleType::F, rank: 4, nodes: ordered });
    }
    // Double bond at an end of the path: orient so the bond is last.
    let oriented: Vec<usize> = if pos == 0 {
        path.iter().rev().copied().collect()
    } else {
        path.clone()
    };
    let (x, y) = (oriented[k - 2], oriented[k - 1]);
    // entry(x, y) = -2 means the final root is short (type B); otherwise the
    // final root is long (type C).  Rank 2 is reported as B canonically.
    let family = if k == 2 || entry(x, y) == -2 { SimpleType::B } else { SimpleType::C };
    let nodes_ordered = if k == 2 {
        let (a, b) = (oriented[0], oriented[1]);
        if entry(a, b) == -2 {
            vec![a, b]
        } else {
            vec![b, a]
        }
    } else {
        oriented
    };
    Ok(DynkinComponent { family, rank: k, nodes: nodes_ordered })
}

/// Classify a simply laced component with one branch node: D or E.
fn classify_branched(
    nodes: &[usize],
    adj: &[Vec<usize>],
    b: usize,
) -> Result<DynkinComponent> {
    let invalid = |msg: String| Error::InvalidRootDatum(msg);
    let k = nodes.len();
    // The three arms hanging off the branch node, each listed from the node
    // adjacent to b outward.
    let mut arms: Vec<Vec<usize>> = Vec::new();
    for &first in &adj[b] {
        let mut arm = vec![first];
        let mut prev = b;
        let mut cur = first;
        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
            arm.push(next);
            prev = cur;
            cur = next;
        }
        arms.push(arm);
    }
    debug_assert_eq!(arms.len(), 3);
    arms.sort_by_key(|arm| (arm.len(), arm[0]));
    let lens = (arms[0].len(), arms[1].len(), arms[2].len());
    match lens {
        (1, 1, _) => {
            // D_k: tail from its far end, branch node, then the two forks in
            // index order.
            let mut ordered: Vec<usize> = arms[2].iter().rev().copied().collect();
            ordered.push(b);
            let mut forks = vec![arms[0][0], arms[1][0]];
            forks.sort_unstable();
            ordered.extend(forks);
            Ok(DynkinComponent { family: SimpleType::D, rank: k, nodes: ordered })
        }
        (1, 2, m) if (2..=4).contains(&m) => {
            // E_{m+4}: Bourbaki order 1, 2, 3, 4, 5, ... where node 4 is the
            // branch, node 2 the short arm, nodes (1, 3) the middle arm.
            let mut ordered = vec![arms[1][1], arms[0][0], arms[1][0], b];
            ordered.extend(arms[2].iter().copied());
            Ok(DynkinComponent { family: SimpleType::E, rank: k, nodes: ordered })
        }
        _ => Err(invalid(format!(
            "branched component {nodes:?} has arm lengths {lens:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int_vec;
    use num::BigInt;

    fn int(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn sl2_and_pgl2_matrices() {
        let sl2 = RootDatum::simple(SimpleType::A, 1, Isogeny::SimplyConnected).unwrap();
        assert_eq!(sl2.coroot_matrix(), &IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(sl2.root_matrix(), &IntMatrix::from_rows(&[vec![2]]));

        let pgl2 = RootDatum::simple(SimpleType::A, 1, Isogeny::Adjoint).unwrap();
        assert_eq!(pgl2.coroot_matrix(), &IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(pgl2.root_matrix(), &IntMatrix::from_rows(&[vec![1]]));
        assert_eq!(pgl2.pi1().torsion_invariants(), &[int(2)]);
        assert!(sl2.pi1().torsion_invariants().is_empty());
    }

    #[test]
    fn b4_cartan_is_textbook() {
        let b4 = RootDatum::simple(SimpleType::B, 4, Isogeny::SimplyConnected).unwrap();
        let expected = IntMatrix::from_rows(&[
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -1, 2, -2],
            vec![0, 0, -1, 2],
        ]);
        assert_eq!(b4.cartan_matrix(), &expected);
    }

    #[test]
    fn g2_cartan_orientation() {
        let g2 = RootDatum::simple(SimpleType::G, 2, Isogeny::SimplyConnected).unwrap();
        let expected = IntMatrix::from_rows(&[vec![2, -1], vec![-3, 2]]);
        assert_eq!(g2.cartan_matrix(), &expected);
    }

    #[test]
    fn gl_cartan_is_type_a() {
        let gl4 = RootDatum::gl(4).unwrap();
        let a3 = RootDatum::simple(SimpleType::A, 3, Isogeny::SimplyConnected).unwrap();
        assert_eq!(gl4.cartan_matrix(), a3.cartan_matrix());
        assert_eq!(gl4.lattice_rank(), 4);
        assert_eq!(gl4.num_simple_roots(), 3);
        let pi1 = gl4.pi1();
        assert!(pi1.torsion_invariants().is_empty());
        assert_eq!(pi1.free_rank(), 1);
    }

    #[test]
    fn classification_roundtrip() {
        let cases = [
            (SimpleType::A, 1),
            (SimpleType::A, 5),
            (SimpleType::B, 2),
            (SimpleType::B, 5),
            (SimpleType::C, 3),
            (SimpleType::C, 6),
            (SimpleType::D, 4),
            (SimpleType::D, 7),
            (SimpleType::E, 6),
            (SimpleType::E, 7),
            (SimpleType::E, 8),
            (SimpleType::F, 4),
            (SimpleType::G, 2),
        ];
        for (family, rank) in cases {
            let d = RootDatum::simple(family, rank, Isogeny::SimplyConnected).unwrap();
            let comps = d.components();
            assert_eq!(comps.len(), 1, "{family}{rank}");
            assert_eq!(comps[0].rank, rank, "{family}{rank}");
            assert_eq!(comps[0].family, family, "{family}{rank}");
            // The Bourbaki ordering must re-derive the constructed matrix.
            let perm = &comps[0].nodes;
            let re = d.cartan_matrix().submatrix(perm, perm);
            assert_eq!(&re, &simple_cartan(family, rank), "{family}{rank}");
        }
        // Low-rank coincidences collapse to canonical labels.
        let c2 = RootDatum::simple(SimpleType::C, 2, Isogeny::SimplyConnected).unwrap();
        assert_eq!(c2.components()[0].family, SimpleType::B);
        let d3 = RootDatum::simple(SimpleType::D, 3, Isogeny::SimplyConnected).unwrap();
        assert_eq!(d3.components()[0].family, SimpleType::A);
    }

    #[test]
    fn product_classification_and_pi1() {
        let gl3 = RootDatum::gl(3).unwrap();
        let g2 = RootDatum::simple(SimpleType::G, 2, Isogeny::Adjoint).unwrap();
        let p = RootDatum::product(&gl3, &g2).unwrap();
        let labels: Vec<String> = p.components().iter().map(|c| c.label()).collect();
        assert_eq!(labels, vec!["A2", "G2"]);
        assert_eq!(p.lattice_rank(), 5);

        // PGL2 x PGL3 has fundamental group Z/2 x Z/3 = Z/6.
        let pgl2 = RootDatum::simple(SimpleType::A, 1, Isogeny::Adjoint).unwrap();
        let pgl3 = RootDatum::simple(SimpleType::A, 2, Isogeny::Adjoint).unwrap();
        let q = RootDatum::product(&pgl2, &pgl3).unwrap();
        assert_eq!(q.pi1().torsion_invariants(), &[int(6)]);
    }

    #[test]
    fn adjoint_pi1_tables() {
        let cases: Vec<(SimpleType, usize, Vec<i64>)> = vec![
            (SimpleType::A, 2, vec![3]),
            (SimpleType::A, 5, vec![6]),
            (SimpleType::B, 4, vec![2]),
            (SimpleType::C, 3, vec![2]),
            (SimpleType::D, 4, vec![2, 2]),
            (SimpleType::D, 5, vec![4]),
            (SimpleType::D, 6, vec![2, 2]),
            (SimpleType::E, 6, vec![3]),
            (SimpleType::E, 7, vec![2]),
            (SimpleType::E, 8, vec![]),
            (SimpleType::F, 4, vec![]),
            (SimpleType::G, 2, vec![]),
        ];
        for (family, rank, torsion) in cases {
            let d = RootDatum::simple(family, rank, Isogeny::Adjoint).unwrap();
            let expected: Vec<BigInt> = torsion.iter().map(|&t| int(t)).collect();
            assert_eq!(
                d.pi1().torsion_invariants(),
                expected.as_slice(),
                "{family}{rank}"
            );
        }
    }

    #[test]
    fn rejects_invalid_cartans() {
        // Affine bond (multiplicity 4).
        let co = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]);
        assert!(RootDatum::new("bad", co, IntMatrix::identity(2)).is_err());
        // Broken zero symmetry.
        let co = IntMatrix::from_rows(&[vec![2, 0], vec![-1, 2]]);
        assert!(RootDatum::new("bad", co, IntMatrix::identity(2)).is_err());
        // Cycle (affine A_2).
        let co = IntMatrix::from_rows(&[
            vec![2, -1, -1],
            vec![-1, 2, -1],
            vec![-1, -1, 2],
        ]);
        assert!(RootDatum::new("bad", co, IntMatrix::identity(3)).is_err());
        // Dependent coroots.
        let co = IntMatrix::from_rows(&[vec![1, 2], vec![1, 2]]);
        let ro = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert!(RootDatum::new("bad", co, ro).is_err());
    }

    #[test]
    fn positive_root_counts() {
        let cases = [
            (SimpleType::A, 1),
            (SimpleType::A, 4),
            (SimpleType::B, 3),
            (SimpleType::C, 4),
            (SimpleType::D, 4),
            (SimpleType::D, 5),
            (SimpleType::E, 6),
            (SimpleType::F, 4),
            (SimpleType::G, 2),
        ];
        for (family, rank) in cases {
            let d = RootDatum::simple(family, rank, Isogeny::SimplyConnected).unwrap();
            let pos = d.positive_roots();
            assert_eq!(
                pos.len(),
                num_positive_roots_of(family, rank),
                "{family}{rank}"
            );
            assert_eq!(d.all_roots().len(), 2 * pos.len(), "{family}{rank}");
        }
    }

    #[test]
    fn fundamental_weights_pair_to_delta() {
        let data = vec![
            RootDatum::gl(5).unwrap(),
            RootDatum::simple(SimpleType::D, 4, Isogeny::Adjoint).unwrap(),
            RootDatum::simple(SimpleType::B, 3, Isogeny::SimplyConnected).unwrap(),
            RootDatum::product(
                &RootDatum::gl(2).unwrap(),
                &RootDatum::simple(SimpleType::A, 2, Isogeny::Adjoint).unwrap(),
            )
            .unwrap(),
        ];
        for d in &data {
            let omegas = d.fundamental_weights();
            for (i, omega) in omegas.iter().enumerate() {
                for j in 0..d.num_simple_roots() {
                    let coroot = crate::lattice::to_rat_vec(&d.coroot(j));
                    let pairing: Rat =
                        omega.iter().zip(&coroot).map(|(a, b)| a * b).sum();
                    let expected = if i == j { Rat::one() } else { Rat::zero() };
                    assert_eq!(pairing, expected, "{} omega_{i} coroot_{j}", d.name());
                }
            }
        }
    }

    #[test]
    fn pgl2_weight_is_half() {
        let pgl2 = RootDatum::simple(SimpleType::A, 1, Isogeny::Adjoint).unwrap();
        let omegas = pgl2.fundamental_weights();
        assert_eq!(omegas[0], vec![Rat::new(int(1), int(2))]);
        let sl2 = RootDatum::simple(SimpleType::A, 1, Isogeny::SimplyConnected).unwrap();
        assert_eq!(sl2.fundamental_weights()[0], vec![Rat::one()]);
    }

    #[test]
    fn weyl_order_formula_values() {
        let cases: Vec<(SimpleType, usize, u128)> = vec![
            (SimpleType::A, 2, 6),
            (SimpleType::B, 4, 384),
            (SimpleType::D, 5, 1920),
            (SimpleType::G, 2, 12),
            (SimpleType::F, 4, 1152),
            (SimpleType::E, 7, 2_903_040),
        ];
        for (family, rank, order) in cases {
            let d = RootDatum::simple(family, rank, Isogeny::SimplyConnected).unwrap();
            assert_eq!(d.weyl_order(), order, "{family}{rank}");
        }
        let gl4 = RootDatum::gl(4).unwrap();
        assert_eq!(gl4.weyl_order(), 24);
        let p = RootDatum::product(
            &RootDatum::gl(3).unwrap(),
            &RootDatum::simple(SimpleType::G, 2, Isogeny::Adjoint).unwrap(),
        )
        .unwrap();
        assert_eq!(p.weyl_order(), 72);
    }

    #[test]
    fn torsion_generator_lift_has_full_order() {
        let d5 = RootDatum::simple(SimpleType::D, 5, Isogeny::Adjoint).unwrap();
        let pi1 = d5.pi1();
        assert_eq!(pi1.torsion_invariants(), &[int(4)]);
        let g = pi1.torsion_generator_lift(0);
        let mut acc = int_vec(&[0; 5]);
        for k in 1..=4 {
            for i in 0..5 {
                acc[i] += &g[i];
            }
            let is_zero = pi1.is_zero_class(&acc);
            assert_eq!(is_zero, k == 4, "order of generator at step {k}");
        }
    }
}
