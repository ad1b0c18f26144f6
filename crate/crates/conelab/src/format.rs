//! `ConeFile`: the JSON text format for cones.
//!
//! Coordinates are exact rationals written as strings, `"p/q"` or `"p"`.
//! The header carries everything needed to reload the file: family, point
//! count, ambient space, build parameters, the coordinate labels and the
//! format version.

use std::path::Path;

use anyhow::{bail, Context};
use conelab_core::exactvec::{arc_labels, pair_labels};
use conelab_core::generators::{ConeId, Family};
use conelab_core::linalg;
use conelab_core::polyhedra::{Ambient, Cone};
use conelab_core::{BigInt, IntVec, Rational};
use serde::{Deserialize, Serialize};

pub const FORMAT: &str = "conelab-cone";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientDesc {
    /// `"pairs"` or `"arcs"`.
    pub space: String,
    /// Size of `V`.
    pub points: usize,
    /// Pairs space only: whether the extra point `0` is present.
    #[serde(default)]
    pub with_zero: bool,
}

impl AmbientDesc {
    pub fn from_ambient(a: Ambient) -> AmbientDesc {
        match a {
            Ambient::Pairs { n, with_zero } => AmbientDesc {
                space: "pairs".into(),
                points: n,
                with_zero,
            },
            Ambient::Arcs { n } => AmbientDesc {
                space: "arcs".into(),
                points: n,
                with_zero: false,
            },
        }
    }

    pub fn to_ambient(&self) -> anyhow::Result<Ambient> {
        match self.space.as_str() {
            "pairs" => Ok(Ambient::Pairs {
                n: self.points,
                with_zero: self.with_zero,
            }),
            "arcs" => Ok(Ambient::Arcs { n: self.points }),
            other => bail!("unknown ambient space {other:?}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Bound on `|b_i|` for the hypermetric families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    /// How the representations were obtained, oldest first.
    #[serde(default)]
    pub history: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified {
    pub facets: bool,
    pub rays: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub toolkit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Point count in the family's own convention.
    pub n: usize,
    pub ambient: AmbientDesc,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub certified: Certified,
    pub coordinates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeFile {
    pub header: Header,
    #[serde(default)]
    pub equalities: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays: Option<Vec<Vec<String>>>,
    /// For each inequality, the indices of the rays on its hyperplane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<Vec<Vec<usize>>>,
}

pub fn coordinate_labels(a: Ambient) -> Vec<String> {
    match a {
        Ambient::Pairs { n, with_zero } => pair_labels(n, with_zero)
            .into_iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect(),
        Ambient::Arcs { n } => arc_labels(n)
            .into_iter()
            .map(|(i, j)| format!("{i}>{j}"))
            .collect(),
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .with_context(|| format!("bad numerator in {s:?}"))?;
            let q: BigInt = q
                .trim()
                .parse()
                .with_context(|| format!("bad denominator in {s:?}"))?;
            if q == BigInt::from(0) {
                bail!("zero denominator in {s:?}");
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(s.parse().with_context(|| format!("bad number {s:?}"))?),
    };
    Ok(r)
}

fn write_rows(rows: &[IntVec]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

/// Rows are homogeneous, so each is scaled to its primitive integer form.
fn read_rows(rows: &[Vec<String>], dim: usize, what: &str) -> anyhow::Result<Vec<IntVec>> {
    rows.iter()
        .enumerate()
        .map(|(k, r)| {
            if r.len() != dim {
                bail!("{what} row {k} has {} entries, expected {dim}", r.len());
            }
            let q = r
                .iter()
                .map(|s| parse_rational(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(linalg::primitive_from_rationals(&q))
        })
        .collect()
}

impl ConeFile {
    pub fn new(id: Option<&ConeId>, n: usize, cone: &Cone) -> ConeFile {
        let ambient = cone.ambient();
        let header = Header {
            format: FORMAT.into(),
            version: FORMAT_VERSION,
            toolkit: concat!("conelab ", env!("CARGO_PKG_VERSION")).into(),
            family: id.map(|i| i.family.name().to_string()),
            n,
            ambient: AmbientDesc::from_ambient(ambient),
            params: Params {
                bound: id
                    .filter(|i| matches!(i.family, Family::Hyp | Family::WQHyp))
                    .map(ConeId::hyp_bound),
                history: Vec::new(),
            },
            certified: Certified {
                facets: cone.facets_certified(),
                rays: cone.rays_certified(),
            },
            coordinates: coordinate_labels(ambient),
        };
        ConeFile {
            header,
            equalities: write_rows(cone.equalities()),
            inequalities: cone.inequalities().map(write_rows),
            rays: cone.rays().map(write_rows),
            incidence: None,
        }
    }

    pub fn from_id(id: &ConeId, cone: &Cone) -> ConeFile {
        ConeFile::new(Some(id), id.n, cone)
    }

    pub fn cone_id(&self) -> anyhow::Result<Option<ConeId>> {
        let Some(name) = &self.header.family else {
            return Ok(None);
        };
        let family: Family = name.parse()?;
        let mut id = ConeId::new(family, self.header.n);
        id.bound = self.header.params.bound;
        Ok(Some(id))
    }

    pub fn ambient(&self) -> anyhow::Result<Ambient> {
        self.header.ambient.to_ambient()
    }

    pub fn to_cone(&self) -> anyhow::Result<Cone> {
        if self.header.format != FORMAT {
            bail!("not a cone file (format {:?})", self.header.format);
        }
        if self.header.version > FORMAT_VERSION {
            bail!(
                "cone file version {} is newer than supported {}",
                self.header.version,
                FORMAT_VERSION
            );
        }
        let ambient = self.ambient()?;
        let dim = ambient.dim();
        if self.header.coordinates != coordinate_labels(ambient) {
            bail!("coordinate labels do not match the ambient space");
        }
        let eq = read_rows(&self.equalities, dim, "equality")?;
        let ineq = self
            .inequalities
            .as_deref()
            .map(|r| read_rows(r, dim, "inequality"))
            .transpose()?;
        let rays = self
            .rays
            .as_deref()
            .map(|r| read_rows(r, dim, "ray"))
            .transpose()?;
        Ok(Cone::from_parts(ambient, eq, ineq, rays)?)
    }

    pub fn inequality_rows(&self) -> anyhow::Result<Vec<IntVec>> {
        let dim = self.ambient()?.dim();
        match &self.inequalities {
            Some(r) => read_rows(r, dim, "inequality"),
            None => bail!("file has no inequalities"),
        }
    }

    pub fn ray_rows(&self) -> anyhow::Result<Vec<IntVec>> {
        let dim = self.ambient()?.dim();
        match &self.rays {
            Some(r) => read_rows(r, dim, "ray"),
            None => bail!("file has no rays"),
        }
    }

    /// Fills the incidence section from the current rows.
    pub fn attach_incidence(&mut self, cone: &Cone) -> anyhow::Result<()> {
        let inc = cone.incidence()?;
        self.incidence = Some(inc.into_iter().map(|r| r.rays.iter().collect()).collect());
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> anyhow::Result<ConeFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<ConeFile> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ConeFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use conelab_core::generators::build_cone;

    #[test]
    fn rationals_round_trip() {
        for s in [
            "0",
            "-3",
            "7/2",
            "-1/3",
            "123456789012345678901234567891/1024",
        ] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert_eq!(format_rational(&parse_rational("2/-4").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn cone_round_trip() {
        for (f, n) in [
            (Family::Cut, 5),
            (Family::OCut, 4),
            (Family::WQMet, 3),
            (Family::Hyp, 5),
        ] {
            let id = ConeId::new(f, n);
            let cone = build_cone(&id).unwrap();
            let file = ConeFile::from_id(&id, &cone);
            let back = ConeFile::from_json(&file.to_json()).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.to_cone().unwrap(), cone);
            let got = back.cone_id().unwrap().unwrap();
            assert_eq!(
                (got.family, got.n, got.hyp_bound()),
                (id.family, id.n, id.hyp_bound())
            );
        }
    }

    #[test]
    fn rational_rows_are_scaled_to_primitive() {
        let id = ConeId::new(Family::Cut, 3);
        let cone = build_cone(&id).unwrap();
        let mut file = ConeFile::from_id(&id, &cone);
        file.rays.as_mut().unwrap()[0] = vec!["1/2".into(), "1/2".into(), "0".into()];
        let rays = file.ray_rows().unwrap();
        assert_eq!(
            rays[0],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)]
        );
        file.rays.as_mut().unwrap()[0].pop();
        assert!(file.to_cone().is_err());
    }
}
