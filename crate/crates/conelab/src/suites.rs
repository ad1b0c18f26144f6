//! Named verification suites. Every check is exact; the rendered report
//! has one line per check and no timings, so it is reproducible.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use anyhow::{bail, Context as _};
use conelab_core::exactvec::{
    bicircuit, phi, qn_inner, weight_basis, ArcVector, PairVector, PointSet, QnVector,
};
use conelab_core::facetlab::{cut_roots, ocut_roots, psi_point, star, transport_ints};
use conelab_core::generators::{
    build_cone, cut_vector, ocut_vector, sym_cut_vector, to_ints, weight_cut_vector, ConeId, Family,
};
use conelab_core::linalg;
use conelab_core::polyhedra::{Ambient, Cone};
use conelab_core::symmetry::Layout;
use conelab_core::{BigInt, IntVec, Rational};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convert::{build_file, convert, facets, rays, Context, Direction};
use crate::format::ConeFile;
use crate::report::{arc_to_qn, orbit_report, orbit_vectors, parse_group, qn_to_arc};
use crate::table::{build_table, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Identities,
    Dimensions,
    SetFunctions,
    Inner,
    PsiCut,
    Equalities,
    Orbits,
    Table,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::Dimensions,
        Suite::SetFunctions,
        Suite::Inner,
        Suite::PsiCut,
        Suite::Equalities,
        Suite::Orbits,
        Suite::Table,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Dimensions => "dimensions",
            Suite::SetFunctions => "setfunctions",
            Suite::Inner => "inner",
            Suite::PsiCut => "psi-cut",
            Suite::Equalities => "equalities",
            Suite::Orbits => "orbits",
            Suite::Table => "table",
        }
    }

    /// Values of `n = |V|` run when none are given.
    pub fn default_range(self) -> RangeInclusive<usize> {
        match self {
            Suite::Identities => 2..=6,
            Suite::Dimensions => 3..=7,
            Suite::SetFunctions => 3..=5,
            Suite::Inner => 3..=6,
            Suite::PsiCut => 3..=5,
            Suite::Equalities => 3..=6,
            Suite::Orbits => 3..=5,
            Suite::Table => 6..=6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Suite> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let key = match key.as_str() {
            "projection" | "psi" => "psi-cut",
            "set-functions" => "setfunctions",
            other => other,
        }
        .to_string();
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == key)
            .ok_or_else(|| {
                anyhow::anyhow!(
                    "unknown suite {s:?}; known: {}",
                    Suite::ALL.map(Suite::name).join(", ")
                )
            })
    }
}

/// Parses `4`, `3..5` or `3..=5` (both inclusive).
pub fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (s, s),
    };
    let a: usize = a
        .trim()
        .parse()
        .with_context(|| format!("bad range {s:?}"))?;
    let b: usize = b
        .trim()
        .parse()
        .with_context(|| format!("bad range {s:?}"))?;
    if a > b {
        bail!("empty range {s:?}");
    }
    Ok(a..=b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub n: usize,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Tables built along the way (the `table` suite).
    pub tables: Vec<Table>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            out.push_str(&t.render());
        }
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "{status} {} n={} {}: {}\n",
                self.suite, c.n, c.name, c.detail
            ));
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&format!(
            "{}: {} checks, {} failed\n",
            self.suite,
            self.checks.len(),
            failed
        ));
        out
    }
}

struct Recorder {
    n: usize,
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            n: self.n,
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    /// Passes when `failure` is `None`; otherwise records the counterexample.
    fn expect_none(
        &mut self,
        name: impl Into<String>,
        ok_detail: impl Into<String>,
        failure: Option<String>,
    ) {
        match failure {
            None => self.check(name, true, ok_detail),
            Some(why) => self.check(name, false, why),
        }
    }
}

pub fn run_suite(
    suite: Suite,
    range: RangeInclusive<usize>,
    ctx: &Context,
) -> anyhow::Result<SuiteReport> {
    let mut report = SuiteReport {
        suite,
        checks: Vec::new(),
        tables: Vec::new(),
    };
    for n in range {
        let mut rec = Recorder {
            n,
            checks: Vec::new(),
        };
        match suite {
            Suite::Identities => identities(&mut rec, n)?,
            Suite::Dimensions => dimensions(&mut rec, n)?,
            Suite::SetFunctions => set_functions(&mut rec, n)?,
            Suite::Inner => inner(&mut rec, n, 1000)?,
            Suite::PsiCut => psi_cut(&mut rec, n, ctx)?,
            Suite::Equalities => equalities(&mut rec, n, ctx)?,
            Suite::Orbits => orbits(&mut rec, n, ctx)?,
            Suite::Table => report.tables.push(table(&mut rec, n, ctx)?),
        }
        report.checks.extend(rec.checks);
    }
    Ok(report)
}

fn ints(a: &ArcVector) -> IntVec {
    to_ints(a.coords())
}

fn show(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn set_name(s: PointSet) -> String {
    let pts: Vec<String> = s.points().map(|p| p.to_string()).collect();
    format!("{{{}}}", pts.join(","))
}

fn subsets(n: usize) -> impl Iterator<Item = PointSet> {
    PointSet::all(n)
}

fn identities(rec: &mut Recorder, n: usize) -> anyhow::Result<()> {
    let q: Vec<ArcVector> = (1..=n)
        .map(|k| weight_basis(k, n))
        .collect::<Result<_, _>>()?;
    let sum = q.iter().fold(ArcVector::zeros(n), |a, b| &a + b);
    rec.check(
        "sum_k q(k) = 0",
        sum.is_zero(),
        if sum.is_zero() {
            "exact".into()
        } else {
            format!("sum = {:?}", ints(&sum))
        },
    );

    let two = Rational::from_integer(2.into());
    let mut bad = None;
    for k in 0..n {
        for l in 0..n {
            let want = if k == l {
                Rational::from_integer((2 * (n as i64 - 1)).into())
            } else {
                -&two
            };
            let got = q[k].dot(&q[l]);
            if got != want && bad.is_none() {
                bad = Some(format!(
                    "(q({}),q({})) = {got}, expected {want}",
                    k + 1,
                    l + 1
                ));
            }
        }
    }
    rec.expect_none(
        "(q(k),q(k)) = 2(n-1), (q(k),q(l)) = -2",
        format!("{} pairs", n * n),
        bad,
    );

    let mut bad = None;
    for s in subsets(n) {
        let d = sym_cut_vector(s, n)?;
        for t in subsets(n) {
            let v = d.dot(&weight_cut_vector(t, n)?);
            if !v.is_zero() && bad.is_none() {
                bad = Some(format!("S={} T={}: {v}", set_name(s), set_name(t)));
            }
        }
    }
    rec.expect_none(
        "(d^O(S), q(T)) = 0",
        format!("{} pairs", 1usize << (2 * n)),
        bad,
    );

    let (mut bad_sum, mut bad_diff, mut bad_psi) = (None, None, None);
    for s in subsets(n) {
        let c = ocut_vector(s, n)?;
        let cc = ocut_vector(s.complement(n), n)?;
        if &c + &cc != sym_cut_vector(s, n)? {
            bad_sum.get_or_insert_with(|| format!("S={}", set_name(s)));
        }
        if &c - &cc != weight_cut_vector(s, n)? {
            bad_diff.get_or_insert_with(|| format!("S={}", set_name(s)));
        }
        let psi = psi_point(&cut_vector(s, n, true)?)?.expand();
        if psi != c.scaled(&two) {
            bad_psi.get_or_insert_with(|| {
                format!(
                    "S={}: psi = {}",
                    set_name(s),
                    show(&linalg::primitive_from_rationals(psi.coords()))
                )
            });
        }
    }
    let count = format!("{} sets", 1usize << n);
    rec.expect_none("c(S) + c(V-S) = d^O(S)", count.clone(), bad_sum);
    rec.expect_none("c(S) - c(V-S) = q(S)", count.clone(), bad_diff);
    rec.expect_none("psi(d(S)) = 2c(S)", count, bad_psi);

    let e0 = cut_vector(PointSet::full(n), n, true)?;
    let psi0 = psi_point(&e0)?;
    rec.check("psi(e_0) = 0", psi0.expand().is_zero(), "exact");
    Ok(())
}

fn rank_of(rows: &[IntVec]) -> usize {
    linalg::rank(rows)
}

/// All bicircuits up to reversal: cycles through their least point, with
/// the second point smaller than the last.
fn all_bicircuits(n: usize) -> anyhow::Result<Vec<IntVec>> {
    fn grow(n: usize, cycle: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cycle.len() >= 3 && cycle[1] < cycle[cycle.len() - 1] {
            out.push(cycle.clone());
        }
        for x in cycle[0] + 1..=n {
            if !cycle.contains(&x) {
                cycle.push(x);
                grow(n, cycle, out);
                cycle.pop();
            }
        }
    }
    let mut cycles = Vec::new();
    for start in 1..=n {
        grow(n, &mut vec![start], &mut cycles);
    }
    cycles.iter().map(|c| Ok(ints(&bicircuit(c, n)?))).collect()
}

fn dimensions(rec: &mut Recorder, n: usize) -> anyhow::Result<()> {
    let mut rows: Vec<IntVec> = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rows.push(ints(&phi(&PairVector::unit(n, false, i, j))?));
        }
    }
    for k in 1..=n {
        rows.push(ints(&weight_basis(k, n)?));
    }
    let want = n * (n + 1) / 2 - 1;
    let got = rank_of(&rows);
    rec.check(
        "dim Q_n = n(n+1)/2 - 1",
        got == want,
        format!("rank {got}, expected {want}"),
    );

    let circuits = all_bicircuits(n)?;
    let want = n * (n - 1) / 2 - (n - 1);
    let got = rank_of(&circuits);
    rec.check(
        "dim Q_n^c = n(n-1)/2 - (n-1)",
        got == want,
        format!(
            "rank {got} of {} bicircuits, expected {want}",
            circuits.len()
        ),
    );
    Ok(())
}

fn set_functions(rec: &mut Recorder, n: usize) -> anyhow::Result<()> {
    let q: Vec<ArcVector> = subsets(n)
        .map(|s| weight_cut_vector(s, n))
        .collect::<Result<_, _>>()?;
    let c: Vec<ArcVector> = subsets(n)
        .map(|s| ocut_vector(s, n))
        .collect::<Result<_, _>>()?;
    let (mut bad_mod, mut bad_sub) = (None, None);
    for s in subsets(n) {
        for t in subsets(n) {
            let (u, i) = (
                s.union(t).bits() as usize,
                s.intersection(t).bits() as usize,
            );
            let (a, b) = (s.bits() as usize, t.bits() as usize);
            if &q[u] + &q[i] != &q[a] + &q[b] {
                bad_mod.get_or_insert_with(|| format!("S={} T={}", set_name(s), set_name(t)));
            }
            let lhs = &c[u] + &c[i];
            let rhs = &c[a] + &c[b];
            if lhs.coords().iter().zip(rhs.coords()).any(|(x, y)| x > y) {
                bad_sub.get_or_insert_with(|| format!("S={} T={}", set_name(s), set_name(t)));
            }
        }
    }
    let pairs = format!("{} pairs", 1usize << (2 * n));
    rec.expect_none("q(S u T) + q(S n T) = q(S) + q(T)", pairs.clone(), bad_mod);
    rec.expect_none("c(S u T) + c(S n T) <= c(S) + c(T)", pairs, bad_sub);
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(
        rng.gen_range(-20i64..=20).into(),
        rng.gen_range(1i64..=9).into(),
    )
}

fn random_qn(rng: &mut ChaCha8Rng, n: usize) -> anyhow::Result<QnVector> {
    let mut sym = PairVector::zeros(n);
    for (i, j) in sym.pairs() {
        sym.set(i, j, random_rational(rng));
    }
    let w = (0..n).map(|_| random_rational(rng)).collect();
    Ok(QnVector::new(sym, w)?)
}

fn inner(rec: &mut Recorder, n: usize, samples: usize) -> anyhow::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    let half = Rational::new(1.into(), 2.into());
    let mut bad = None;
    for k in 0..samples {
        let g = random_qn(&mut rng, n)?;
        let q = random_qn(&mut rng, n)?;
        let (a, b) = (g.expand(), q.expand());
        let brute = a
            .coords()
            .iter()
            .zip(b.coords())
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
            * &half;
        let formula = qn_inner(&g, &q)?;
        if formula != brute && bad.is_none() {
            bad = Some(format!(
                "sample {k}: formula {formula}, arc product/2 {brute}"
            ));
        }
    }
    rec.expect_none(
        "qn_inner = (expand g, expand q)/2",
        format!("{samples} random pairs"),
        bad,
    );
    Ok(())
}

fn first_difference(a: &BTreeSet<IntVec>, b: &BTreeSet<IntVec>) -> Option<String> {
    if let Some(v) = a.difference(b).next() {
        return Some(format!(
            "{} only on the left ({} vs {})",
            show(v),
            a.len(),
            b.len()
        ));
    }
    b.difference(a)
        .next()
        .map(|v| format!("{} only on the right ({} vs {})", show(v), a.len(), b.len()))
}

/// Facets, as a normalized `Q_n` set, of the cone generated by arc `rays`.
fn qn_facets_of_arc_rays(
    n: usize,
    rays: Vec<IntVec>,
    ctx: &Context,
) -> anyhow::Result<BTreeSet<IntVec>> {
    let cone = Cone::from_rays(Ambient::Arcs { n }, rays)?;
    let file = ConeFile::new(None, n, &cone);
    let out = convert(&file, Direction::ToFacets, ctx)?;
    out.inequality_rows()?
        .iter()
        .map(|r| arc_to_qn(r, n))
        .collect()
}

fn nonzero(v: &IntVec) -> bool {
    v.iter().any(|x| !x.is_zero())
}

fn psi_cut(rec: &mut Recorder, n: usize, ctx: &Context) -> anyhow::Result<()> {
    let ocut_rows = facets(&ConeId::new(Family::OCut, n), ctx)?;
    let dd: BTreeSet<IntVec> = ocut_rows
        .iter()
        .map(|r| arc_to_qn(r, n))
        .collect::<anyhow::Result<_>>()?;
    let cut_rows = facets(&ConeId::new(Family::Cut, n + 1), ctx)?;
    let mut transported = BTreeSet::new();
    let mut bad_roots = None;
    for f in &cut_rows {
        if let Some(g) = transport_ints(f, n)? {
            let rf = cut_roots(f, n)?;
            let rg = ocut_roots(&g, n)?;
            if rf != rg && bad_roots.is_none() {
                bad_roots = Some(format!(
                    "f = {}: R(F) has {} sets, R(G) has {}",
                    show(f),
                    rf.len(),
                    rg.len()
                ));
            }
            transported.insert(g);
        }
    }
    rec.expect_none(
        format!(
            "facets of OCut_{n} = transported facets of Cut_{} containing e_0",
            n + 1
        ),
        format!("{} facets", dd.len()),
        first_difference(&dd, &transported),
    );
    rec.expect_none(
        "R(G) = R(F) for every transported facet",
        format!("{} facets", transported.len()),
        bad_roots,
    );
    let bad_star = dd
        .iter()
        .find(|g| !dd.contains(&star(g, n)))
        .map(|g| format!("g = {} but g* is not a facet", show(g)));
    rec.expect_none(
        "facets closed under g -> g*",
        format!("{} facets", dd.len()),
        bad_star,
    );

    let met_rays = rays(&ConeId::new(Family::Met, n + 1), ctx)?;
    let psi_rays: Vec<IntVec> = met_rays
        .iter()
        .map(|r| {
            let d = PairVector::from_ints(n, true, r)?;
            Ok(linalg::primitive_from_rationals(
                psi_point(&d)?.expand().coords(),
            ))
        })
        .collect::<anyhow::Result<Vec<_>>>()?
        .into_iter()
        .filter(nonzero)
        .collect();
    let psi_met = qn_facets_of_arc_rays(n, psi_rays, ctx)?;
    let wqmet = build_cone(&ConeId::new(Family::WQMet, n))?;
    let def: BTreeSet<IntVec> = wqmet
        .inequalities()
        .expect("definitional rows")
        .iter()
        .map(|r| arc_to_qn(r, n))
        .collect::<anyhow::Result<BTreeSet<_>>>()?
        .into_iter()
        .filter(nonzero)
        .collect();
    rec.expect_none(
        format!("facets of psi(Met_{}) = WQMet_{n} inequalities", n + 1),
        format!(
            "{} facets from {} rays of Met_{}",
            psi_met.len(),
            met_rays.len(),
            n + 1
        ),
        first_difference(&psi_met, &def),
    );
    let wq_rays = rays(&ConeId::new(Family::WQMet, n), ctx)?;
    let wq_facets = qn_facets_of_arc_rays(n, wq_rays.clone(), ctx)?;
    rec.expect_none(
        format!(
            "psi(Met_{}) = WQMet_{n} (facets from the rays of WQMet_{n})",
            n + 1
        ),
        format!("{} rays, {} facets", wq_rays.len(), wq_facets.len()),
        first_difference(&psi_met, &wq_facets),
    );
    Ok(())
}

/// A cone with both descriptions at hand.
struct Described {
    name: String,
    rays: Vec<IntVec>,
    rows: Vec<IntVec>,
    eqs: Vec<IntVec>,
}

impl Described {
    /// Index and kind of the first constraint `x` violates.
    fn violation(&self, x: &[BigInt]) -> Option<String> {
        if let Some(k) = self.eqs.iter().position(|e| !linalg::dot(e, x).is_zero()) {
            return Some(format!("equality {}", show(&self.eqs[k])));
        }
        self.rows
            .iter()
            .find(|a| linalg::dot(a, x).is_negative())
            .map(|a| format!("inequality {}", show(a)))
    }

    /// First ray of `other` outside this cone.
    fn misses(&self, other: &Described) -> Option<(IntVec, String)> {
        other
            .rays
            .iter()
            .find_map(|r| self.violation(r).map(|why| (r.clone(), why)))
    }
}

fn describe(id: ConeId, ctx: &Context) -> anyhow::Result<Described> {
    let file = build_file(&id, &ctx.settings.limits)?;
    if file.rays.is_some() {
        let out = convert(&file, Direction::ToFacets, ctx)?;
        let eqs = out.to_cone()?.equalities().to_vec();
        Ok(Described {
            name: id.to_string(),
            rays: file.ray_rows()?,
            rows: out.inequality_rows()?,
            eqs,
        })
    } else {
        let out = convert(&file, Direction::ToRays, ctx)?;
        let cone = file.to_cone()?;
        Ok(Described {
            name: id.to_string(),
            rays: out.ray_rows()?,
            rows: file.inequality_rows()?,
            eqs: cone.equalities().to_vec(),
        })
    }
}

fn record_equal(rec: &mut Recorder, a: &Described, b: &Described) {
    let fail = a
        .misses(b)
        .map(|(r, why)| {
            format!(
                "ray {} of {} violates {} of {}",
                show(&r),
                b.name,
                why,
                a.name
            )
        })
        .or_else(|| {
            b.misses(a).map(|(r, why)| {
                format!(
                    "ray {} of {} violates {} of {}",
                    show(&r),
                    a.name,
                    why,
                    b.name
                )
            })
        });
    rec.expect_none(
        format!("{} = {}", a.name, b.name),
        format!(
            "{} and {} rays satisfy both descriptions",
            a.rays.len(),
            b.rays.len()
        ),
        fail,
    );
}

fn record_strict(rec: &mut Recorder, small: &Described, big: &Described) {
    let name = format!("{} < {}", small.name, big.name);
    if let Some((r, why)) = big.misses(small) {
        rec.check(
            name,
            false,
            format!(
                "ray {} of {} violates {} of {}",
                show(&r),
                small.name,
                why,
                big.name
            ),
        );
        return;
    }
    match small.misses(big) {
        Some((r, why)) => rec.check(
            name,
            true,
            format!("separating point {} violates {}", show(&r), why),
        ),
        None => rec.check(
            name,
            false,
            format!("every ray of {} lies in {}", big.name, small.name),
        ),
    }
}

/// A facet of `Cut_7` containing `e_0` (pairs on `{0..6}`) violated by the
/// path metric of `K_7` minus the path `0-1-2`.
const CUT7_SEPARATOR: [i64; 21] = [
    -5, -3, 2, 2, 2, 2, -5, 3, 3, 3, 3, 2, 2, 2, 2, -1, -1, -1, -1, -1, -1,
];

/// Graph metric on `{0..n}` with distance 2 on `far` and 1 elsewhere.
fn two_distance_metric(n: usize, far: &[(usize, usize)]) -> IntVec {
    conelab_core::exactvec::pair_labels(n, true)
        .into_iter()
        .map(|p| BigInt::from(if far.contains(&p) { 2 } else { 1 }))
        .collect()
}

fn psi_ints(d: &IntVec, n: usize) -> anyhow::Result<IntVec> {
    let x = PairVector::from_ints(n, true, d)?;
    Ok(linalg::primitive_from_rationals(
        psi_point(&x)?.expand().coords(),
    ))
}

/// Inclusions and separating points for `n = 6`, where the larger cones
/// have too many rays to enumerate here.
fn equalities_six(rec: &mut Recorder) -> anyhow::Result<()> {
    let n = 6;
    let (cut_id, hyp_id, met_id) = (
        ConeId::new(Family::Cut, 7),
        ConeId::new(Family::Hyp, 7),
        ConeId::new(Family::Met, 7),
    );
    let cut = build_cone(&cut_id)?;
    let hyp = build_cone(&hyp_id)?;
    let met = build_cone(&met_id)?;
    let cut_rays = cut.rays().expect("definitional rays");
    let hyp_rows = hyp.inequalities().expect("definitional rows");
    let met_rows = met.inequalities().expect("definitional rows");

    let f: IntVec = CUT7_SEPARATOR.iter().map(|&x| BigInt::from(x)).collect();
    let check = cut.is_facet(&f)?;
    let contains_e0 = f[..n].iter().fold(BigInt::zero(), |a, b| a + b).is_zero();
    rec.check(
        format!("separator is a facet of {cut_id} containing e_0"),
        check.is_facet && contains_e0,
        format!("{} incident cuts", check.incident.len()),
    );
    let kp3 = two_distance_metric(n, &[(0, 1), (1, 2)]);
    let pent = two_distance_metric(n, &[(1, 2), (3, 4), (3, 5), (4, 5)]);

    let row_set = |rows: &[IntVec]| rows.iter().cloned().collect::<BTreeSet<IntVec>>();
    let in_rows =
        |rows: &[IntVec], x: &IntVec| rows.iter().all(|a| !linalg::dot(a, x).is_negative());

    let cut_in_hyp = cut_rays.iter().all(|r| in_rows(hyp_rows, r));
    let sep_value = linalg::dot(&f, &kp3);
    rec.check(
        format!("{cut_id} < {hyp_id}"),
        cut_in_hyp && in_rows(hyp_rows, &kp3) && sep_value.is_negative(),
        format!("K7-P3 metric is in {hyp_id}, separator value {sep_value}"),
    );
    let hyp_set = row_set(hyp_rows);
    let met_in_hyp = met_rows.iter().all(|r| hyp_set.contains(r));
    let pent_in_met = in_rows(met_rows, &pent);
    let pent_viol = hyp_rows
        .iter()
        .find(|a| linalg::dot(a, &pent).is_negative());
    rec.check(
        format!("{hyp_id} < {met_id}"),
        met_in_hyp && pent_in_met && pent_viol.is_some(),
        match pent_viol {
            Some(a) => format!(
                "triangle rows are hypermetric rows; K(2,3)-type metric violates {}",
                show(a)
            ),
            None => "no hypermetric row separates the test metric".into(),
        },
    );

    let (ocut_id, wqhyp_id, wqmet_id) = (
        ConeId::new(Family::OCut, n),
        ConeId::new(Family::WQHyp, n),
        ConeId::new(Family::WQMet, n),
    );
    let ocut = build_cone(&ocut_id)?;
    let wqhyp = build_cone(&wqhyp_id)?;
    let wqmet = build_cone(&wqmet_id)?;
    let wh = Described {
        name: wqhyp_id.to_string(),
        rays: Vec::new(),
        rows: wqhyp.inequalities().expect("rows").to_vec(),
        eqs: wqhyp.equalities().to_vec(),
    };
    let wm = Described {
        name: wqmet_id.to_string(),
        rays: Vec::new(),
        rows: wqmet.inequalities().expect("rows").to_vec(),
        eqs: wqmet.equalities().to_vec(),
    };
    let ocut_rays = ocut.rays().expect("definitional rays");

    let g = transport_ints(&f, n)?.context("separator contains e_0")?;
    let g_arc = qn_to_arc(&g, n)?;
    let g_check = ocut.is_facet(&g_arc)?;
    let x = psi_ints(&kp3, n)?;
    let inside = ocut_rays.iter().all(|r| wh.violation(r).is_none());
    let x_in = wh.violation(&x);
    let value = linalg::dot(&g_arc, &x);
    rec.check(
        format!("{ocut_id} < {wqhyp_id}"),
        inside && g_check.is_facet && x_in.is_none() && value.is_negative(),
        format!(
            "psi(K7-P3) = {} is in {wqhyp_id} and has value {value} on the transported separator",
            show(&x)
        ),
    );

    let wh_set: BTreeSet<IntVec> = wh
        .rows
        .iter()
        .map(|r| arc_to_qn(r, n))
        .collect::<anyhow::Result<_>>()?;
    let wm_rows_in: bool = wm
        .rows
        .iter()
        .map(|r| arc_to_qn(r, n))
        .collect::<anyhow::Result<Vec<_>>>()?
        .iter()
        .all(|r| wh_set.contains(r));
    let y = psi_ints(&pent, n)?;
    let y_in_met = wm.violation(&y);
    let y_out = wh.violation(&y);
    rec.check(
        format!("{wqhyp_id} < {wqmet_id}"),
        wm_rows_in && y_in_met.is_none() && y_out.is_some(),
        format!(
            "WQMet rows are WQHyp rows; psi of the K(2,3)-type metric {} violates {}",
            show(&y),
            y_out.unwrap_or_default()
        ),
    );
    Ok(())
}

fn equalities(rec: &mut Recorder, n: usize, ctx: &Context) -> anyhow::Result<()> {
    if n >= 6 {
        if n > 6 {
            bail!("equalities suite covers n = 3..6");
        }
        return equalities_six(rec);
    }
    if n < 3 {
        bail!("equalities suite covers n = 3..6");
    }
    let m = n + 1;
    let cut = describe(ConeId::new(Family::Cut, m), ctx)?;
    let hyp = describe(ConeId::new(Family::Hyp, m), ctx)?;
    let met = describe(ConeId::new(Family::Met, m), ctx)?;
    let ocut = describe(ConeId::new(Family::OCut, n), ctx)?;
    let wqhyp = describe(ConeId::new(Family::WQHyp, n), ctx)?;
    let wqmet = describe(ConeId::new(Family::WQMet, n), ctx)?;
    record_equal(rec, &cut, &hyp);
    record_equal(rec, &ocut, &wqhyp);
    if n == 3 {
        record_equal(rec, &hyp, &met);
        record_equal(rec, &cut, &met);
        record_equal(rec, &wqhyp, &wqmet);
        record_equal(rec, &ocut, &wqmet);
    } else {
        record_strict(rec, &hyp, &met);
        record_strict(rec, &wqhyp, &wqmet);
    }
    Ok(())
}

/// Expected orbit counts and labels, by `n`.
fn orbits(rec: &mut Recorder, n: usize, ctx: &Context) -> anyhow::Result<()> {
    let labels = |xs: &[&str]| {
        xs.iter()
            .map(|s| s.to_string())
            .collect::<BTreeSet<String>>()
    };
    let cases: Vec<(Family, usize, &str, usize, BTreeSet<String>)> = match n {
        3 => vec![
            (Family::OCut, 3, "sym", 2, labels(&["(1,0,-1)", "(1^2,-1)"])),
            (Family::OCut, 3, "rev", 2, labels(&["(1,0,-1)", "(1^2,-1)"])),
            (Family::Cut, 4, "all", 1, labels(&["(1^2,0,-1)"])),
        ],
        4 => vec![
            (
                Family::OCut,
                4,
                "sym",
                3,
                labels(&["(1,0^2,-1)", "(1^2,0,-1)", "(1^2,-1^2)"]),
            ),
            (
                Family::Cut,
                5,
                "all",
                2,
                labels(&["(1^2,0^2,-1)", "(1^3,-1^2)"]),
            ),
        ],
        5 => vec![
            (
                Family::OCut,
                5,
                "sym",
                6,
                labels(&[
                    "(1,0^3,-1)",
                    "(1^2,0^2,-1)",
                    "(1^2,0,-1^2)",
                    "(1^3,-1^2)",
                    "(2,1,-1^3)",
                    "(1^3,-1,-2)",
                ]),
            ),
            (Family::OCut, 5, "rev", 5, BTreeSet::new()),
            (
                Family::Cut,
                6,
                "all",
                4,
                labels(&[
                    "(1^2,0^3,-1)",
                    "(1^3,0,-1^2)",
                    "(2,1^2,-1^3)",
                    "(1^4,-1,-2)",
                ]),
            ),
        ],
        _ => bail!("orbits suite covers n = 3..5; use the table suite for n = 6"),
    };
    for (family, k, group, count, want) in cases {
        let id = ConeId::new(family, k);
        let file = convert(
            &build_file(&id, &ctx.settings.limits)?,
            Direction::ToFacets,
            ctx,
        )?;
        let (layout, vectors) = orbit_vectors(&file)?;
        let g = parse_group(group, layout)?;
        let report = orbit_report(&id.to_string(), &vectors, layout, g)?;
        let total: usize = report.orbits.iter().map(|o| o.size).sum();
        let got: BTreeSet<String> = report
            .orbits
            .iter()
            .map(|o| o.label.clone().unwrap_or_else(|| "-".into()))
            .collect();
        let labels_ok = want.is_empty() || got == want;
        let listing: Vec<String> = report
            .orbits
            .iter()
            .map(|o| format!("{}x{}", o.size, o.label.as_deref().unwrap_or("-")))
            .collect();
        rec.check(
            format!("{id} under {g}: {count} orbits"),
            report.orbit_count == count && labels_ok && total == report.facet_count,
            format!(
                "{} orbits [{}] over {} facets",
                report.orbit_count,
                listing.join(" "),
                report.facet_count
            ),
        );
        if matches!(layout, Layout::Qn { .. }) && group == "rev" {
            let sym = orbit_report(
                &id.to_string(),
                &vectors,
                layout,
                parse_group("sym", layout)?,
            )?;
            rec.check(
                format!("{id}: S{k}xS2 merges only asymmetric pairs"),
                report.orbit_count <= sym.orbit_count
                    && sym.orbits.iter().filter(|o| o.symmetric).count()
                        == report.orbits.iter().filter(|o| o.symmetric).count(),
                format!(
                    "{} orbits under S{k}, {} under S{k}xS2",
                    sym.orbit_count, report.orbit_count
                ),
            );
        }
    }
    Ok(())
}

/// Rows `(name, S_{n+1}, S_n, S_n x S_2)` of the table for `n = 6`.
pub const TABLE_N6: [(&str, usize, usize, usize); 11] = [
    ("F1", 1, 2, 2),
    ("F2", 1, 2, 2),
    ("F3", 2, 4, 3),
    ("F4", 1, 1, 1),
    ("F5", 3, 3, 2),
    ("F6", 2, 2, 1),
    ("F7", 4, 7, 4),
    ("F8", 7, 13, 7),
    ("F9", 5, 6, 3),
    ("F10", 3, 6, 4),
    ("F11", 7, 15, 8),
];

/// Totals `(types, S_{n+1}, S_n, S_n x S_2)` for `n = 3..6`.
fn table_totals(n: usize) -> Option<(usize, usize, usize, usize)> {
    match n {
        3 => Some((1, 1, 2, 2)),
        4 => Some((2, 2, 3, 3)),
        5 => Some((3, 4, 6, 5)),
        6 => Some((11, 36, 61, 37)),
        _ => None,
    }
}

fn table(rec: &mut Recorder, n: usize, ctx: &Context) -> anyhow::Result<Table> {
    let f = facets(&ConeId::new(Family::Cut, n + 1), ctx)?;
    let t = build_table(n, &f)?;
    rec.check(
        "orbits respect switching types",
        t.problems.is_empty(),
        if t.problems.is_empty() {
            "every orbit lies in one type".to_string()
        } else {
            t.problems.join("; ")
        },
    );
    let (a, b, c) = t.totals();
    if let Some((types, sa, sb, sc)) = table_totals(n) {
        rec.check(
            format!("Cut_{} facets: {sa} orbits in {types} types", n + 1),
            t.types.len() == types && a == sa,
            format!(
                "{} facets, {a} orbits, {} types",
                t.cut_facets,
                t.types.len()
            ),
        );
        rec.check(
            format!("OCut_{n} facets: {sb} orbits under S{n}, {sc} under S{n}xS2"),
            b == sb && c == sc,
            format!("{} facets, {b} and {c} orbits", t.ocut_facets),
        );
    }
    let lifting_ok = t.types.iter().all(|r| r.full_orbits <= r.sym_orbits);
    rec.check(
        "S_n x S_2 never has more orbits than S_n",
        lifting_ok,
        "per type",
    );
    if n == 6 {
        for (name, x, y, z) in TABLE_N6 {
            let got = t
                .row(name)
                .map(|r| (r.cut_orbits, r.sym_orbits, r.full_orbits));
            rec.check(
                format!("type {name}: {x} / {y} / {z}"),
                got == Some((x, y, z)),
                match got {
                    Some((p, q, r)) => format!("{p} / {q} / {r}"),
                    None => "type not found".into(),
                },
            );
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!(parse_range("3..5").unwrap(), 3..=5);
        assert_eq!(parse_range("3..=6").unwrap(), 3..=6);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("a..b").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("projection".parse::<Suite>().unwrap(), Suite::PsiCut);
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn bicircuit_count() {
        // (k-1)!/2 cycles on each k-subset
        assert_eq!(all_bicircuits(4).unwrap().len(), 4 + 3);
        assert_eq!(all_bicircuits(5).unwrap().len(), 10 + 15 + 12);
    }

    #[test]
    fn cheap_suites_pass() {
        let ctx = Context::default();
        for (s, r) in [
            (Suite::Identities, 2..=4),
            (Suite::Dimensions, 3..=5),
            (Suite::SetFunctions, 3..=4),
        ] {
            let rep = run_suite(s, r, &ctx).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
        let mut rec = Recorder {
            n: 3,
            checks: Vec::new(),
        };
        inner(&mut rec, 3, 50).unwrap();
        assert!(rec.checks.iter().all(|c| c.pass));
    }
}
