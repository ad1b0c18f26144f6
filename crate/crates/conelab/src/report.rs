//! Orbit reports over facet lists, as JSON and CSV.

use std::collections::BTreeSet;

use anyhow::{bail, Context as _};
use conelab_core::exactvec::{project_to_qn, ArcVector};
use conelab_core::facetlab::{FacetKind, FacetRecord, HypermetricIndex};
use conelab_core::generators::Family;
use conelab_core::polyhedra::Ambient;
use conelab_core::symmetry::{orbit_partition, Group, Layout};
use conelab_core::{BigInt, IntVec};
use serde::Serialize;

use crate::format::ConeFile;

/// Largest `|b_i|` searched when labelling hypermetric facets.
pub const LABEL_BOUND: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub index: usize,
    pub size: usize,
    /// Hex form of the content hash of the representative.
    pub id: String,
    /// Exponent notation of `b` when the facet is hypermetric.
    pub label: Option<String>,
    pub symmetric: bool,
    pub zero_lifting: bool,
    pub representative: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub cone: String,
    pub group: String,
    /// `"pairs"`, `"pairs0"` (with the point 0), `"arcs"` or `"qn"`.
    pub layout: String,
    pub facet_count: usize,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitRow>,
}

/// Arc vector lying in `Q_n` to the normalized `(g_(ij), n·v_i)` layout.
pub fn arc_to_qn(row: &[BigInt], n: usize) -> anyhow::Result<IntVec> {
    let a = ArcVector::from_ints(n, row)?;
    Ok(project_to_qn(&a).0.normalized())
}

/// Normalized `Q_n` layout back to a primitive arc vector.
pub fn qn_to_arc(g: &[BigInt], n: usize) -> anyhow::Result<IntVec> {
    let q = conelab_core::QnVector::from_normalized(n, g)?;
    Ok(conelab_core::linalg::primitive_from_rationals(
        q.expand().coords(),
    ))
}

fn layout_name(layout: Layout) -> &'static str {
    match layout {
        Layout::Pairs {
            with_zero: false, ..
        } => "pairs",
        Layout::Pairs {
            with_zero: true, ..
        } => "pairs0",
        Layout::Arcs { .. } => "arcs",
        Layout::Qn { .. } => "qn",
    }
}

/// Facet rows of a file in the layout orbits are computed in. Cones inside
/// `Q_n` move to the normalized layout, which also merges rows that differ
/// by the `Q_n` equalities.
pub fn orbit_vectors(file: &ConeFile) -> anyhow::Result<(Layout, Vec<IntVec>)> {
    let rows = file
        .inequality_rows()
        .context("orbits need an inequality list")?;
    let family = file.cone_id()?.map(|id| id.family);
    match file.ambient()? {
        Ambient::Pairs { n, with_zero } => Ok((Layout::Pairs { n, with_zero }, rows)),
        Ambient::Arcs { n } => {
            let in_qn = matches!(
                family,
                Some(Family::OCut | Family::WQMet | Family::WQHyp | Family::CutSym)
            );
            if !in_qn {
                return Ok((Layout::Arcs { n }, rows));
            }
            let set: BTreeSet<IntVec> = rows
                .iter()
                .map(|r| arc_to_qn(r, n))
                .collect::<anyhow::Result<_>>()?;
            Ok((
                Layout::Qn { n },
                set.into_iter()
                    .filter(|v| v.iter().any(|x| x.sign() != num_bigint::Sign::NoSign))
                    .collect(),
            ))
        }
    }
}

/// Parses `sym`, `rev` or `all` into a group for the layout.
pub fn parse_group(name: &str, layout: Layout) -> anyhow::Result<Group> {
    let n = match layout {
        Layout::Pairs { n, .. } | Layout::Arcs { n } | Layout::Qn { n } => n,
    };
    match (name.to_ascii_lowercase().as_str(), layout) {
        ("sym", _) => Ok(Group::Sym(n)),
        ("rev", Layout::Arcs { .. } | Layout::Qn { .. }) => Ok(Group::SymRev(n)),
        (
            "all",
            Layout::Pairs {
                with_zero: true, ..
            },
        ) => Ok(Group::SymZero(n)),
        (
            "default",
            Layout::Pairs {
                with_zero: true, ..
            },
        ) => Ok(Group::SymZero(n)),
        ("default", _) => Ok(Group::Sym(n)),
        (other, _) => bail!(
            "group {other:?} does not act on the {} layout (use sym, rev or all)",
            layout_name(layout)
        ),
    }
}

/// Whether some point has all its coordinates zero (pairs on `{0} ∪ V`);
/// the zero-lifting property made invariant under `Σ_{n+1}`.
pub fn has_isolated_point(v: &[BigInt], n: usize) -> bool {
    let labels = conelab_core::exactvec::pair_labels(n, true);
    (0..=n).any(|p| {
        labels
            .iter()
            .zip(v)
            .all(|(&(i, j), x)| (i != p && j != p) || x.sign() == num_bigint::Sign::NoSign)
    })
}

fn flags(layout: Layout, group: Group, v: &IntVec) -> (bool, bool) {
    if let (Layout::Pairs { n, with_zero: true }, Group::SymZero(_)) = (layout, group) {
        let z = has_isolated_point(v, n);
        return (z, z);
    }
    let kind = match layout {
        Layout::Pairs { n, with_zero: true } => Some((FacetKind::Cut, n)),
        Layout::Qn { n } => Some((FacetKind::OCut, n)),
        _ => None,
    };
    match kind.and_then(|(k, n)| FacetRecord::new(k, n, v.clone()).ok()) {
        Some(r) => (r.symmetric, r.zero_lifting),
        None => (false, false),
    }
}

/// Orbit report of `vectors` (already in `layout`) under `group`.
pub fn orbit_report(
    cone: &str,
    vectors: &[IntVec],
    layout: Layout,
    group: Group,
) -> anyhow::Result<OrbitReport> {
    let orbits = orbit_partition(vectors, layout, group)?;
    let index = match layout {
        Layout::Pairs { n, with_zero: true } | Layout::Qn { n } if n < 8 => {
            Some(HypermetricIndex::new(n, LABEL_BOUND))
        }
        _ => None,
    };
    let rows = orbits
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let rep = &o.representative;
            let label = index.as_ref().and_then(|ix| match layout {
                Layout::Qn { .. } => ix.ocut_label(rep),
                _ => ix.cut_label(rep),
            });
            let (symmetric, zero_lifting) = flags(layout, group, rep);
            OrbitRow {
                index: k,
                size: o.size(),
                id: format!("{:016x}", o.id()),
                label,
                symmetric,
                zero_lifting,
                representative: rep.iter().map(|x| x.to_string()).collect(),
            }
        })
        .collect();
    Ok(OrbitReport {
        cone: cone.to_string(),
        group: group.to_string(),
        layout: layout_name(layout).to_string(),
        facet_count: vectors.len(),
        orbit_count: orbits.len(),
        orbits: rows,
    })
}

impl OrbitReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "cone",
            "group",
            "orbit",
            "size",
            "id",
            "label",
            "symmetric",
            "zero_lifting",
            "representative",
        ])
        .expect("in-memory write");
        for o in &self.orbits {
            w.write_record([
                self.cone.as_str(),
                self.group.as_str(),
                &o.index.to_string(),
                &o.size.to_string(),
                &o.id,
                o.label.as_deref().unwrap_or(""),
                &o.symmetric.to_string(),
                &o.zero_lifting.to_string(),
                &o.representative.join(" "),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn labels(&self) -> Vec<Option<String>> {
        self.orbits.iter().map(|o| o.label.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::{build_file, convert, Context, Direction};
    use conelab_core::generators::{BuildLimits, ConeId};

    fn report(f: Family, n: usize, group: &str) -> OrbitReport {
        let file = build_file(&ConeId::new(f, n), &BuildLimits::default()).unwrap();
        let out = convert(&file, Direction::ToFacets, &Context::default()).unwrap();
        let (layout, v) = orbit_vectors(&out).unwrap();
        orbit_report("x", &v, layout, parse_group(group, layout).unwrap()).unwrap()
    }

    #[test]
    fn ocut3_orbits() {
        let r = report(Family::OCut, 3, "rev");
        assert_eq!(r.orbit_count, 2);
        assert_eq!(r.facet_count, 9);
        assert_eq!(r.orbits.iter().map(|o| o.size).sum::<usize>(), 9);
        let mut labels: Vec<String> = r.labels().into_iter().map(Option::unwrap).collect();
        labels.sort();
        assert_eq!(labels, ["(1,0,-1)", "(1^2,-1)"]);
    }

    #[test]
    fn cut5_orbits_and_csv() {
        let r = report(Family::Cut, 5, "default");
        assert_eq!(r.group, "S5");
        assert_eq!(r.orbit_count, 2);
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(
            csv.starts_with("cone,group,orbit,size,id,label,symmetric,zero_lifting,representative")
        );
    }

    #[test]
    fn layout_conversions_invert() {
        let g: IntVec = [1, 0, 1, 2, -1, -1]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        let a = qn_to_arc(&g, 3).unwrap();
        assert_eq!(arc_to_qn(&a, 3).unwrap(), g);
    }

    #[test]
    fn group_names() {
        let l = Layout::Pairs {
            n: 4,
            with_zero: true,
        };
        assert_eq!(parse_group("all", l).unwrap(), Group::SymZero(4));
        assert!(parse_group("rev", l).is_err());
        assert_eq!(
            parse_group("rev", Layout::Qn { n: 4 }).unwrap(),
            Group::SymRev(4)
        );
    }
}
