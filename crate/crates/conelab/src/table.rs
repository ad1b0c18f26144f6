//! Switching types of `Cut_{n+1}` facets and the orbit counts of the
//! `OCut_n` facets each type transports to.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, ensure};
use conelab_core::facetlab::{transport_ints, HypermetricIndex};
use conelab_core::generators::{clique_web_vector, hypermetric_vector};
use conelab_core::symmetry::{
    canonical_form, orbit_partition, switching_classes, Group, Layout, Orbit,
};
use conelab_core::IntVec;
use serde::Serialize;

use crate::report::{has_isolated_point, LABEL_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeRow {
    pub name: String,
    /// Orbits of `Cut_{n+1}` facets under `Σ_{n+1}`.
    pub cut_orbits: usize,
    /// Orbits of transported `OCut_n` facets under `Σ_n`.
    pub sym_orbits: usize,
    /// The same under `Σ_n × Σ_2`.
    pub full_orbits: usize,
    /// Whether some facet of the type is zero-lifting.
    pub zero_lifting: bool,
    /// Hypermetric labels of the `Σ_{n+1}` orbits, `-` when not hypermetric.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    /// `|V|`; the facets are those of `Cut_{n+1}`.
    pub n: usize,
    pub cut_facets: usize,
    pub ocut_facets: usize,
    pub types: Vec<TypeRow>,
    /// Internal consistency problems found while building the table.
    pub problems: Vec<String>,
}

impl Table {
    pub fn totals(&self) -> (usize, usize, usize) {
        self.types.iter().fold((0, 0, 0), |(a, b, c), t| {
            (a + t.cut_orbits, b + t.sym_orbits, c + t.full_orbits)
        })
    }

    pub fn row(&self, name: &str) -> Option<&TypeRow> {
        self.types.iter().find(|t| t.name == name)
    }

    /// Fixed-width text with one column per type.
    pub fn render(&self) -> String {
        let (a, b, c) = self.totals();
        let head = format!("S{}", self.n + 1);
        let sym = format!("S{}", self.n);
        let full = format!("S{}xS2", self.n);
        let mut out = String::new();
        let _ = write!(out, "{:<8}", "types");
        for t in &self.types {
            let _ = write!(out, "{:>5}", t.name);
        }
        let _ = writeln!(out, "{:>7}", "total");
        for (name, f, total) in [
            (
                &head,
                (|t: &TypeRow| t.cut_orbits) as fn(&TypeRow) -> usize,
                a,
            ),
            (&sym, |t: &TypeRow| t.sym_orbits, b),
            (&full, |t: &TypeRow| t.full_orbits, c),
        ] {
            let _ = write!(out, "{name:<8}");
            for t in &self.types {
                let _ = write!(out, "{:>5}", f(t));
            }
            let _ = writeln!(out, "{total:>7}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// Vectors identifying the named types for `n = 6`, as `(name, facet)`.
fn markers_n6() -> anyhow::Result<Vec<(&'static str, IntVec)>> {
    let hyp = |b: &[i64]| hypermetric_vector(b, true).map(|v| v.to_primitive());
    let cw = |p: usize, q: usize, blocks: &[usize]| {
        clique_web_vector(p, q, blocks).map(|v| v.to_primitive())
    };
    Ok(vec![
        ("F1", hyp(&[1, 1, 0, 0, 0, 0, -1])?),
        ("F2", hyp(&[1, 1, 1, 0, 0, -1, -1])?),
        ("F3", hyp(&[2, 1, 1, 0, -1, -1, -1])?),
        ("F4", hyp(&[1, 1, 1, 1, -1, -1, -1])?),
        ("F5", hyp(&[2, 2, 1, -1, -1, -1, -1])?),
        ("F6", hyp(&[3, 1, 1, -1, -1, -1, -1])?),
        ("F7", cw(5, 2, &[0, 1, 2, 3, 4, 5, 6])?),
        ("F8", cw(6, 3, &[0, 0, 1, 1, 2, 3, 4, 5, 6])?),
        ("F9", cw(7, 4, &[0, 0, 0, 1, 1, 2, 2, 3, 4, 5, 6])?),
    ])
}

/// Builds the table from the facet list of `Cut_{n+1}` (pairs layout on
/// `{0} ∪ V`, as produced by the conversion).
pub fn build_table(n: usize, facets: &[IntVec]) -> anyhow::Result<Table> {
    ensure!(n >= 2, "need at least two points in V");
    let layout = Layout::Pairs { n, with_zero: true };
    let orbits = orbit_partition(facets, layout, Group::SymZero(n))?;
    let classes = switching_classes(facets, n, &orbits)?;
    let mut orbit_of = vec![0usize; facets.len()];
    for (o, orbit) in orbits.iter().enumerate() {
        for &m in &orbit.members {
            orbit_of[m] = o;
        }
    }
    let mut type_of = vec![0usize; orbits.len()];
    for (k, c) in classes.iter().enumerate() {
        for &o in c {
            type_of[o] = k;
        }
    }

    let mut transported: Vec<(IntVec, usize)> = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        if let Some(g) = transport_ints(f, n)? {
            transported.push((g, i));
        }
    }
    transported.sort();
    let ocut: Vec<IntVec> = transported.iter().map(|(g, _)| g.clone()).collect();
    let source: Vec<usize> = transported.iter().map(|&(_, i)| i).collect();
    let qn = Layout::Qn { n };
    let sym = orbit_partition(&ocut, qn, Group::Sym(n))?;
    let full = orbit_partition(&ocut, qn, Group::SymRev(n))?;
    let type_of_orbit = |o: &Orbit| type_of[orbit_of[source[o.members[0]]]];

    let mut problems = Vec::new();
    for (what, parts) in [("S", &sym), ("SxS2", &full)] {
        for o in parts.iter() {
            let t = type_of_orbit(o);
            if o.members.iter().any(|&m| type_of[orbit_of[source[m]]] != t) {
                problems.push(format!("{what} orbit {} mixes switching types", o.id()));
            }
        }
    }

    let index = (n < 8).then(|| HypermetricIndex::new(n, LABEL_BOUND));
    let mut rows: Vec<TypeRow> = classes
        .iter()
        .enumerate()
        .map(|(k, c)| TypeRow {
            name: format!("T{}", k + 1),
            cut_orbits: c.len(),
            sym_orbits: sym.iter().filter(|o| type_of_orbit(o) == k).count(),
            full_orbits: full.iter().filter(|o| type_of_orbit(o) == k).count(),
            zero_lifting: c
                .iter()
                .any(|&o| has_isolated_point(&orbits[o].representative, n)),
            labels: c
                .iter()
                .map(|&o| {
                    index
                        .as_ref()
                        .and_then(|ix| ix.cut_label(&orbits[o].representative))
                        .unwrap_or_else(|| "-".into())
                })
                .collect(),
        })
        .collect();

    if n == 6 {
        name_types_n6(&mut rows, &orbits, &type_of)?;
    }
    Ok(Table {
        n,
        cut_facets: facets.len(),
        ocut_facets: ocut.len(),
        types: rows,
        problems,
    })
}

/// `F1..F9` from marker facets, then `F10` and `F11` for the two remaining
/// types, fewer `Σ_7` orbits first. Rows are reordered by name.
fn name_types_n6(
    rows: &mut [TypeRow],
    orbits: &[Orbit],
    type_of: &[usize],
) -> anyhow::Result<()> {
    let layout = Layout::Pairs {
        n: 6,
        with_zero: true,
    };
    let by_rep: BTreeMap<&IntVec, usize> = orbits
        .iter()
        .enumerate()
        .map(|(i, o)| (&o.representative, i))
        .collect();
    let mut named = vec![None; rows.len()];
    for (name, f) in markers_n6()? {
        let canon = canonical_form(&f, layout, Group::SymZero(6))?;
        let Some(&o) = by_rep.get(&canon) else {
            bail!("marker {name} is not a facet")
        };
        let t = type_of[o];
        if let Some(prev) = named[t] {
            bail!("markers {prev} and {name} fall in one switching type");
        }
        named[t] = Some(name);
    }
    let mut rest: Vec<usize> = (0..rows.len()).filter(|&t| named[t].is_none()).collect();
    ensure!(
        rest.len() == 2,
        "expected two unmarked types, found {}",
        rest.len()
    );
    rest.sort_by_key(|&t| (rows[t].cut_orbits, t));
    ensure!(
        rows[rest[0]].cut_orbits != rows[rest[1]].cut_orbits,
        "the two unmarked types have equal orbit counts"
    );
    for (t, name) in rest.into_iter().zip(["F10", "F11"]) {
        named[t] = Some(name);
    }
    for (row, name) in rows.iter_mut().zip(&named) {
        row.name = name.expect("every type named").to_string();
    }
    rows.sort_by_key(|r| r.name[1..].parse::<usize>().unwrap_or(usize::MAX));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::{facets, Context};
    use conelab_core::generators::{ConeId, Family};

    #[test]
    fn small_tables() {
        // (types, Cut_{n+1} orbits, OCut_n orbits under S_n and S_n x S_2)
        for (n, expect) in [(3, (1, 1, 2, 2)), (4, (2, 2, 3, 3)), (5, (3, 4, 6, 5))] {
            let f = facets(&ConeId::new(Family::Cut, n + 1), &Context::default()).unwrap();
            let t = build_table(n, &f).unwrap();
            assert!(t.problems.is_empty());
            let (a, b, c) = t.totals();
            assert_eq!((t.types.len(), a, b, c), expect, "n = {n}\n{}", t.render());
        }
    }

    #[test]
    fn isolated_points() {
        let tri = hypermetric_vector(&[1, 1, 0, -1], true)
            .unwrap()
            .to_primitive();
        assert!(has_isolated_point(&tri, 3));
        let pent = hypermetric_vector(&[1, 1, 1, -1, -1], true)
            .unwrap()
            .to_primitive();
        assert!(!has_isolated_point(&pent, 4));
    }
}
