//! Cached, resumable conversion between the two representations.

use std::fmt;
use std::str::FromStr;

use anyhow::bail;
use conelab_core::generators::{build_cone_with, BuildLimits, ConeId};
use conelab_core::polyhedra::{DdCheckpoint, DdControl, DdObserver, DdOptions};
use conelab_core::IntVec;

use crate::cache::{content_key, Cache};
use crate::format::{ConeFile, FORMAT_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Rays to facets.
    ToFacets,
    /// Inequalities to extreme rays.
    ToRays,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::ToFacets => "v-to-h",
            Direction::ToRays => "h-to-v",
        })
    }
}

impl FromStr for Direction {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Direction> {
        match s.to_ascii_lowercase().as_str() {
            "v-to-h" | "h" | "facets" => Ok(Direction::ToFacets),
            "h-to-v" | "v" | "rays" => Ok(Direction::ToRays),
            _ => bail!("unknown direction {s:?} (expected v-to-h or h-to-v)"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub dd: DdOptions,
    /// Rows between checkpoints; 0 disables them.
    pub checkpoint_every: usize,
    /// Continue from a stored checkpoint when one exists.
    pub resume: bool,
    /// Checkpoint and stop after this many rows (for split runs).
    pub stop_after: Option<usize>,
    pub limits: BuildLimits,
}

/// Settings plus the cache every suite and command shares.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub settings: Settings,
    pub cache: Option<Cache>,
}

struct Checkpointer<'a> {
    cache: Option<&'a Cache>,
    key: &'a str,
    every: usize,
    stop_after: Option<usize>,
    error: Option<anyhow::Error>,
}

impl DdObserver for Checkpointer<'_> {
    fn progress(&mut self, processed: usize, total: usize, _rays: usize) -> DdControl {
        if self.cache.is_some()
            && self.stop_after.is_some_and(|s| processed >= s)
            && processed < total
        {
            DdControl::CheckpointAndStop
        } else if self.cache.is_some() && self.every > 0 && processed.is_multiple_of(self.every) {
            DdControl::Checkpoint
        } else {
            DdControl::Continue
        }
    }

    fn checkpoint(&mut self, checkpoint: DdCheckpoint) {
        if let Some(cache) = self.cache {
            if let Err(e) = cache.save_checkpoint(self.key, &checkpoint) {
                self.error.get_or_insert(e);
            }
        }
    }
}

fn rows_json(rows: &Option<Vec<Vec<String>>>) -> String {
    serde_json::to_string(rows).expect("strings serialize")
}

/// Cache key: the source representation plus the algorithm parameters.
pub fn cache_key(file: &ConeFile, dir: Direction, dd: &DdOptions) -> String {
    let source = match dir {
        Direction::ToFacets => rows_json(&file.rays),
        Direction::ToRays => rows_json(&file.inequalities),
    };
    let ambient = serde_json::to_string(&file.header.ambient).expect("plain data serializes");
    let eq = serde_json::to_string(&file.equalities).expect("strings serialize");
    content_key(&[
        format!("conelab convert v{FORMAT_VERSION}"),
        dir.to_string(),
        ambient,
        if dir == Direction::ToRays {
            eq
        } else {
            String::new()
        },
        source,
        format!("{:?}/{:?}", dd.adjacency, dd.order),
    ])
}

/// Adds the certified dual representation. Results are looked up in and
/// stored to the cache when one is given.
pub fn convert(file: &ConeFile, dir: Direction, ctx: &Context) -> anyhow::Result<ConeFile> {
    let key = cache_key(file, dir, &ctx.settings.dd);
    let cache = ctx.cache.as_ref();
    if let Some(hit) = cache.and_then(|c| c.get(&key)) {
        return Ok(hit);
    }
    let mut cone = file.to_cone()?;
    let resume = match (cache, ctx.settings.resume) {
        (Some(c), true) => c.load_checkpoint(&key)?,
        _ => None,
    };
    let mut obs = Checkpointer {
        cache,
        key: &key,
        every: ctx.settings.checkpoint_every,
        stop_after: ctx.settings.stop_after,
        error: None,
    };
    let result = match dir {
        Direction::ToFacets => cone.compute_facets(&ctx.settings.dd, &mut obs, resume.as_ref()),
        Direction::ToRays => cone.compute_rays(&ctx.settings.dd, &mut obs, resume.as_ref()),
    };
    if let Some(e) = obs.error {
        return Err(e.context("saving checkpoint"));
    }
    result?;
    let mut out = ConeFile::new(None, file.header.n, &cone);
    out.header.family = file.header.family.clone();
    out.header.params = file.header.params.clone();
    out.header.params.history.push(match dir {
        Direction::ToFacets => "facets by double description".into(),
        Direction::ToRays => "rays by double description".into(),
    });
    out.header.certified.facets |= file.header.certified.facets && dir == Direction::ToRays;
    out.header.certified.rays |= file.header.certified.rays && dir == Direction::ToFacets;
    if let Some(c) = cache {
        c.put(&key, &out)?;
        c.clear_checkpoint(&key);
    }
    Ok(out)
}

/// The definitional file of a family cone.
pub fn build_file(id: &ConeId, limits: &BuildLimits) -> anyhow::Result<ConeFile> {
    let cone = build_cone_with(id, limits)?;
    let mut file = ConeFile::from_id(id, &cone);
    file.header.params.history.push("definition".into());
    Ok(file)
}

/// Facet vectors of a family cone, through the cache.
pub fn facets(id: &ConeId, ctx: &Context) -> anyhow::Result<Vec<IntVec>> {
    let file = build_file(id, &ctx.settings.limits)?;
    if file.rays.is_none() {
        bail!("{id} is given by inequalities; its facets are not computed by conversion");
    }
    convert(&file, Direction::ToFacets, ctx)?.inequality_rows()
}

/// Extreme rays of a family cone, through the cache.
pub fn rays(id: &ConeId, ctx: &Context) -> anyhow::Result<Vec<IntVec>> {
    let file = build_file(id, &ctx.settings.limits)?;
    if file.rays.is_some() {
        return convert(&file, Direction::ToFacets, ctx)?.ray_rows();
    }
    convert(&file, Direction::ToRays, ctx)?.ray_rows()
}
