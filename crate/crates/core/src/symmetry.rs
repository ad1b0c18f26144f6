//! Point permutations and the reversal `q ↦ q*` acting on vectors, canonical
//! forms, orbit partitions and switching classes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::exactvec::{arc_position, pair_count, pair_position, ArcVector, PairVector, QnVector};
use crate::facetlab::{cut_roots, switch_cut};
use crate::{BigInt, Error, IntVec, Rational, Result};

/// A permutation `σ` of the points together with an optional reversal.
///
/// `perm[p]` is `σ(p)` for internal index `p` (label `p + 1` on `V`, or
/// label `p` on `V ∪ {0}`). The action is `σ(q)_ij = q_{σ(i)σ(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub perm: Vec<usize>,
    pub reversed: bool,
}

impl GroupElement {
    pub fn identity(points: usize) -> GroupElement {
        GroupElement {
            perm: (0..points).collect(),
            reversed: false,
        }
    }

    pub fn reversal(points: usize) -> GroupElement {
        GroupElement {
            perm: (0..points).collect(),
            reversed: true,
        }
    }

    /// From labels `σ(1), ..., σ(n)` on `V`.
    pub fn from_labels(images: &[usize], reversed: bool) -> Result<GroupElement> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in images {
            if x == 0 || x > n || core::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::PointOutOfRange { point: x, n });
            }
        }
        Ok(GroupElement {
            perm: images.iter().map(|x| x - 1).collect(),
            reversed,
        })
    }

    pub fn points(&self) -> usize {
        self.perm.len()
    }

    /// `self ∘ other`: acting by the result equals acting by `self`, then by `other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        // (τ·(σ·q))_ij = (σ·q)_{τ(i)τ(j)} = q_{στ(i) στ(j)}.
        GroupElement {
            perm: other.perm.iter().map(|&p| self.perm[p]).collect(),
            reversed: self.reversed != other.reversed,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut perm = alloc::vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        GroupElement {
            perm,
            reversed: self.reversed,
        }
    }

    fn label(&self, label: usize, with_zero: bool) -> usize {
        if with_zero {
            self.perm[label]
        } else {
            self.perm[label - 1] + 1
        }
    }

    pub fn act_arc(&self, g: &ArcVector) -> Result<ArcVector> {
        self.check(g.n())?;
        let mut out = ArcVector::zeros(g.n());
        for (i, j) in g.arcs() {
            let (a, b) = (self.label(i, false), self.label(j, false));
            let v = if self.reversed {
                g.get(b, a)
            } else {
                g.get(a, b)
            };
            out.set(i, j, v.clone());
        }
        Ok(out)
    }

    /// Permutations of `V` on `R^E`; on `V ∪ {0}` the element must fix 0
    /// unless it has `n + 1` points. Reversal is not defined on `R^E`.
    pub fn act_pair(&self, d: &PairVector) -> Result<PairVector> {
        if self.reversed {
            return Err(Error::NotSymmetric);
        }
        let with_zero = d.has_zero_point() && self.points() == d.point_count();
        if !with_zero {
            self.check(d.n())?;
        }
        let mut out = d.clone();
        for (i, j) in d.pairs() {
            let lift = |p: usize| match (with_zero, p) {
                (true, _) => self.label(p, true),
                (false, 0) => 0,
                (false, _) => self.label(p, false),
            };
            out.set(i, j, d.get(lift(i), lift(j)).clone());
        }
        Ok(out)
    }

    pub fn act_qn(&self, q: &QnVector) -> Result<QnVector> {
        self.check(q.n())?;
        let plain = GroupElement {
            perm: self.perm.clone(),
            reversed: false,
        };
        let sym = plain.act_pair(q.sym())?;
        let weights: Vec<Rational> = (1..=q.n())
            .map(|i| {
                let w = &q.weights()[self.label(i, false) - 1];
                if self.reversed {
                    -w
                } else {
                    w.clone()
                }
            })
            .collect();
        QnVector::new(sym, weights)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.points() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.points(),
            })
        }
    }
}

/// Integer coordinate layouts the group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    /// Pairs on `V` (`with_zero = false`) or `V ∪ {0}`.
    Pairs {
        n: usize,
        with_zero: bool,
    },
    Arcs {
        n: usize,
    },
    /// `(g_(ij), n·v_i)`, the normalized `Q_n` layout.
    Qn {
        n: usize,
    },
}

impl Layout {
    pub fn len(self) -> usize {
        match self {
            Layout::Pairs { n, with_zero } => pair_count(n + with_zero as usize),
            Layout::Arcs { n } => n * (n - 1),
            Layout::Qn { n } => pair_count(n) + n,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

/// Declared symmetry groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// `Σ_n` on `V`.
    Sym(usize),
    /// `Σ_n × Σ_2`, the second factor being `q ↦ q*`.
    SymRev(usize),
    /// `Σ_{n+1}` on `V ∪ {0}`.
    SymZero(usize),
}

impl Group {
    pub fn points(self) -> usize {
        match self {
            Group::Sym(n) | Group::SymRev(n) => n,
            Group::SymZero(n) => n + 1,
        }
    }

    pub fn order(self) -> usize {
        let f: usize = (1..=self.points()).product();
        if matches!(self, Group::SymRev(_)) {
            2 * f
        } else {
            f
        }
    }

    /// All elements, permutations in lexicographic order, reversal last.
    pub fn elements(self) -> Vec<GroupElement> {
        let mut perms = Vec::new();
        let mut p: Vec<usize> = (0..self.points()).collect();
        loop {
            perms.push(p.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
        let mut out: Vec<GroupElement> = perms
            .iter()
            .map(|p| GroupElement {
                perm: p.clone(),
                reversed: false,
            })
            .collect();
        if matches!(self, Group::SymRev(_)) {
            out.extend(perms.into_iter().map(|perm| GroupElement {
                perm,
                reversed: true,
            }));
        }
        out
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Sym(n) => write!(f, "S{n}"),
            Group::SymRev(n) => write!(f, "S{n}xS2"),
            Group::SymZero(n) => write!(f, "S{}", n + 1),
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A group element compiled to a signed coordinate map on one layout:
/// `out[k] = sign[k] · v[source[k]]`.
#[derive(Clone, Debug)]
pub struct CoordMap {
    source: Vec<usize>,
    negate: Vec<bool>,
}

impl CoordMap {
    pub fn new(e: &GroupElement, layout: Layout) -> Result<CoordMap> {
        let pts = e.points();
        let mut source = Vec::with_capacity(layout.len());
        let mut negate = Vec::with_capacity(layout.len());
        match layout {
            Layout::Pairs { n, with_zero } => {
                if e.reversed {
                    return Err(Error::NotSymmetric);
                }
                let total = n + with_zero as usize;
                // An element on V acting on V ∪ {0} fixes 0.
                let map = |p: usize| -> Result<usize> {
                    if pts == total {
                        Ok(e.perm[p])
                    } else if with_zero && pts == n {
                        Ok(if p == 0 { 0 } else { e.perm[p - 1] + 1 })
                    } else {
                        Err(Error::DimensionMismatch {
                            expected: total,
                            found: pts,
                        })
                    }
                };
                for a in 0..total {
                    for b in a + 1..total {
                        let (x, y) = (map(a)?, map(b)?);
                        source.push(pair_position(total, x.min(y), x.max(y)));
                        negate.push(false);
                    }
                }
            }
            Layout::Arcs { n } => {
                e.check(n)?;
                for a in 0..n {
                    for b in (0..n).filter(|&b| b != a) {
                        let (x, y) = (e.perm[a], e.perm[b]);
                        let (x, y) = if e.reversed { (y, x) } else { (x, y) };
                        source.push(arc_position(n, x, y));
                        negate.push(false);
                    }
                }
            }
            Layout::Qn { n } => {
                e.check(n)?;
                let np = pair_count(n);
                for a in 0..n {
                    for b in a + 1..n {
                        let (x, y) = (e.perm[a], e.perm[b]);
                        source.push(pair_position(n, x.min(y), x.max(y)));
                        negate.push(false);
                    }
                }
                for a in 0..n {
                    source.push(np + e.perm[a]);
                    negate.push(e.reversed);
                }
            }
        }
        Ok(CoordMap { source, negate })
    }

    pub fn apply(&self, v: &[BigInt]) -> IntVec {
        self.source
            .iter()
            .zip(&self.negate)
            .map(|(&s, &neg)| if neg { -&v[s] } else { v[s].clone() })
            .collect()
    }
}

fn compile(group: Group, layout: Layout) -> Result<Vec<CoordMap>> {
    group
        .elements()
        .iter()
        .map(|e| CoordMap::new(e, layout))
        .collect()
}

/// Lexicographically smallest image of `v` over the group.
pub fn canonical_form(v: &[BigInt], layout: Layout, group: Group) -> Result<IntVec> {
    if v.len() != layout.len() {
        return Err(Error::DimensionMismatch {
            expected: layout.len(),
            found: v.len(),
        });
    }
    let maps = compile(group, layout)?;
    Ok(maps
        .iter()
        .map(|m| m.apply(v))
        .min()
        .expect("group is nonempty"))
}

/// FNV-1a hash of the decimal coordinates; identifies an orbit by its
/// canonical form.
pub fn orbit_id(canonical: &[BigInt]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut feed = |b: u8| {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    };
    for x in canonical {
        for b in alloc::format!("{x},").bytes() {
            feed(b);
        }
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Canonical form (lexicographic minimum of the orbit).
    pub representative: IntVec,
    /// Indices into the input list, ascending.
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn id(&self) -> u64 {
        orbit_id(&self.representative)
    }
}

/// Partition of `vectors` into orbits, which must each lie in the list.
/// Orbits are sorted by representative.
pub fn orbit_partition(vectors: &[IntVec], layout: Layout, group: Group) -> Result<Vec<Orbit>> {
    if let Some(v) = vectors.iter().find(|v| v.len() != layout.len()) {
        return Err(Error::DimensionMismatch {
            expected: layout.len(),
            found: v.len(),
        });
    }
    let maps = compile(group, layout)?;
    let index: BTreeMap<&IntVec, usize> = vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut owner = alloc::vec![usize::MAX; vectors.len()];
    let mut orbits = Vec::new();
    for start in 0..vectors.len() {
        if owner[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = Vec::new();
        let mut rep: Option<IntVec> = None;
        for m in &maps {
            let img = m.apply(&vectors[start]);
            let &k = index.get(&img).ok_or(Error::NotInvariant)?;
            if owner[k] == usize::MAX {
                owner[k] = id;
                members.push(k);
            } else if owner[k] != id {
                return Err(Error::NotInvariant);
            }
            if rep.as_ref().is_none_or(|r| &img < r) {
                rep = Some(img);
            }
        }
        members.sort_unstable();
        orbits.push(Orbit {
            representative: rep.expect("group is nonempty"),
            members,
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(orbits)
}

/// Switching types of `Cut_{n+1}` facets (Cut layout): classes of `Σ_{n+1}`
/// orbits joined whenever a facet of one switches (by a root `T ⊆ V`) into
/// the other. Returns groups of orbit indices into `orbits`, sorted.
pub fn switching_classes(facets: &[IntVec], n: usize, orbits: &[Orbit]) -> Result<Vec<Vec<usize>>> {
    let mut orbit_of = alloc::vec![usize::MAX; facets.len()];
    for (o, orbit) in orbits.iter().enumerate() {
        for &m in &orbit.members {
            orbit_of[m] = o;
        }
    }
    if orbit_of.contains(&usize::MAX) {
        return Err(Error::NotInvariant);
    }
    let index: BTreeMap<&IntVec, usize> = facets.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..orbits.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for (o, orbit) in orbits.iter().enumerate() {
        let f = &facets[orbit.members[0]];
        for t in cut_roots(f, n)? {
            let g = switch_cut(f, n, t)?;
            let &k = index.get(&g).ok_or(Error::NotInvariant)?;
            let (a, b) = (find(&mut parent, o), find(&mut parent, orbit_of[k]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for o in 0..orbits.len() {
        let r = find(&mut parent, o);
        classes.entry(r).or_default().push(o);
    }
    Ok(classes.into_values().collect())
}
