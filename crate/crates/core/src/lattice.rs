//! Square-lattice geometry: sites, finite windows with an edge margin, and the
//! regions used to localize operators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice vertex. Ordering is lexicographic in `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Site {
    pub x: i32,
    pub y: i32,
}

impl Site {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Site on the chain used by 1d pipelines.
    pub const fn chain(x: i32) -> Self {
        Self { x, y: 0 }
    }

    pub fn linf(&self, other: &Site) -> u32 {
        (self.x - other.x).unsigned_abs().max((self.y - other.y).unsigned_abs())
    }

    pub fn norm(&self) -> u32 {
        self.x.unsigned_abs().max(self.y.unsigned_abs())
    }

    pub fn offset(&self, dx: i32, dy: i32) -> Site {
        Site::new(self.x + dx, self.y + dy)
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for Site {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("site {s:?}")))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::Parse(format!("site {s:?}")))?;
        let x = a.trim().parse().map_err(|_| Error::Parse(format!("site {s:?}")))?;
        let y = b.trim().parse().map_err(|_| Error::Parse(format!("site {s:?}")))?;
        Ok(Site::new(x, y))
    }
}

/// A finite rectangle of sites standing in for the infinite lattice. Sites
/// closer than `margin` to the boundary form the edge zone, where truncation
/// artifacts of the window itself live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: i32,
    pub x_max: i32,
    pub y_min: i32,
    pub y_max: i32,
    pub margin: u32,
}

impl Window {
    pub fn new(x_min: i32, x_max: i32, y_min: i32, y_max: i32, margin: u32) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::Parse(format!("empty window [{x_min},{x_max}]x[{y_min},{y_max}]")));
        }
        let w = Self { x_min, x_max, y_min, y_max, margin };
        let width = (x_max - x_min + 1) as u32;
        let height = (y_max - y_min + 1) as u32;
        if 2 * margin >= width || (!w.is_1d() && 2 * margin >= height) {
            return Err(Error::Parse(format!("margin {margin} leaves no interior")));
        }
        Ok(w)
    }

    /// `width x height` window centred so that `x` runs over
    /// `[-width/2, width/2 - 1]`, likewise `y`.
    pub fn square(width: u32, height: u32, margin: u32) -> Result<Self> {
        let (w, h) = (width as i32, height as i32);
        Self::new(-w / 2, w - w / 2 - 1, -h / 2, h - h / 2 - 1, margin)
    }

    /// A chain of `n` sites on the line `y = 0`.
    pub fn chain(n: u32, margin: u32) -> Result<Self> {
        let n = n as i32;
        Self::new(-n / 2, n - n / 2 - 1, 0, 0, margin)
    }

    /// Parses `"WxH"` (2d) or `"N"` (chain).
    pub fn parse_dims(dims: &str, margin: u32) -> Result<Self> {
        let bad = || Error::Parse(format!("window size {dims:?}"));
        match dims.split_once(['x', 'X']) {
            Some((a, b)) => {
                Self::square(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?, margin)
            }
            None => Self::chain(dims.trim().parse().map_err(|_| bad())?, margin),
        }
    }

    pub fn is_1d(&self) -> bool {
        self.y_min == 0 && self.y_max == 0
    }

    pub fn width(&self) -> u32 {
        (self.x_max - self.x_min + 1) as u32
    }

    pub fn height(&self) -> u32 {
        (self.y_max - self.y_min + 1) as u32
    }

    pub fn with_margin(&self, margin: u32) -> Result<Self> {
        Self::new(self.x_min, self.x_max, self.y_min, self.y_max, margin)
    }

    /// Same shape grown by `k` sites on every side (only along x for chains),
    /// with the margin grown by `k` as well, so the interior is unchanged.
    pub fn grown(&self, k: u32) -> Result<Self> {
        let k = k as i32;
        let dy = if self.is_1d() { 0 } else { k };
        Self::new(self.x_min - k, self.x_max + k, self.y_min - dy, self.y_max + dy, self.margin + k as u32)
    }

    pub fn contains(&self, s: &Site) -> bool {
        (self.x_min..=self.x_max).contains(&s.x) && (self.y_min..=self.y_max).contains(&s.y)
    }

    /// Number of steps from `s` to the outermost ring of the window (0 on it).
    pub fn edge_distance(&self, s: &Site) -> u32 {
        let dx = (s.x - self.x_min).min(self.x_max - s.x);
        let d = if self.is_1d() { dx } else { dx.min((s.y - self.y_min).min(self.y_max - s.y)) };
        d.max(0) as u32
    }

    pub fn in_edge_zone(&self, s: &Site) -> bool {
        self.edge_distance(s) < self.margin
    }

    pub fn is_interior(&self, s: &Site) -> bool {
        self.contains(s) && !self.in_edge_zone(s)
    }

    /// All sites in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (self.x_min..=self.x_max).flat_map(move |x| (self.y_min..=self.y_max).map(move |y| Site::new(x, y)))
    }

    pub fn interior_sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.sites().filter(move |s| !self.in_edge_zone(s))
    }

    pub fn num_sites(&self) -> usize {
        (self.width() * self.height()) as usize
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]x[{},{}] margin {}",
            self.x_min, self.x_max, self.y_min, self.y_max, self.margin
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionKind {
    Full,
    /// Upper half plane `y >= 0`.
    HalfPlaneH,
    /// The line `y = 0`.
    BoundaryLine,
    /// `y = 0, x >= 0`.
    HalfLineR,
    /// `y = 0, x <= 0`.
    HalfLineL,
    /// L-infinity ball of the given radius around the origin.
    OriginDisk(u32),
    Complement(Box<Region>),
}

/// A core set of sites together with a thickening radius. A site belongs to
/// the region when its L-infinity distance to the core is at most the
/// thickening.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RegionJson", into = "RegionJson")]
pub struct Region {
    pub kind: RegionKind,
    pub thickening: u32,
}

impl Region {
    pub fn new(kind: RegionKind, thickening: u32) -> Self {
        Self { kind, thickening }
    }

    pub fn full() -> Self {
        Self::new(RegionKind::Full, 0)
    }

    pub fn half_plane() -> Self {
        Self::new(RegionKind::HalfPlaneH, 0)
    }

    pub fn boundary_line(thickening: u32) -> Self {
        Self::new(RegionKind::BoundaryLine, thickening)
    }

    pub fn half_line_r(thickening: u32) -> Self {
        Self::new(RegionKind::HalfLineR, thickening)
    }

    pub fn half_line_l(thickening: u32) -> Self {
        Self::new(RegionKind::HalfLineL, thickening)
    }

    pub fn origin_disk(radius: u32, thickening: u32) -> Self {
        Self::new(RegionKind::OriginDisk(radius), thickening)
    }

    pub fn complement(of: Region) -> Self {
        Self::new(RegionKind::Complement(Box::new(of)), 0)
    }

    pub fn thickened(&self, by: u32) -> Self {
        Self { kind: self.kind.clone(), thickening: self.thickening + by }
    }

    /// Membership in the core set (thickening ignored).
    pub fn core_contains(&self, s: &Site) -> bool {
        match &self.kind {
            RegionKind::Complement(inner) => !inner.contains(s),
            _ => self.core_distance(s) == Some(0),
        }
    }

    /// L-infinity distance to the core, when it has a closed form. Complements
    /// have none and are handled by search.
    fn core_distance(&self, s: &Site) -> Option<u32> {
        let d = match &self.kind {
            RegionKind::Full => 0,
            RegionKind::HalfPlaneH => (-s.y).max(0) as u32,
            RegionKind::BoundaryLine => s.y.unsigned_abs(),
            RegionKind::HalfLineR => s.y.unsigned_abs().max((-s.x).max(0) as u32),
            RegionKind::HalfLineL => s.y.unsigned_abs().max(s.x.max(0) as u32),
            RegionKind::OriginDisk(r) => s.norm().saturating_sub(*r),
            RegionKind::Complement(_) => return None,
        };
        Some(d)
    }

    pub fn contains(&self, s: &Site) -> bool {
        if let Some(d) = self.core_distance(s) {
            return d <= self.thickening;
        }
        let t = self.thickening as i32;
        (-t..=t).any(|dx| (-t..=t).any(|dy| self.core_contains(&s.offset(dx, dy))))
    }

    pub fn contains_all<'a>(&self, sites: impl IntoIterator<Item = &'a Site>) -> bool {
        sites.into_iter().all(|s| self.contains(s))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RegionKind::Full => write!(f, "full")?,
            RegionKind::HalfPlaneH => write!(f, "half_plane_H")?,
            RegionKind::BoundaryLine => write!(f, "boundary_line")?,
            RegionKind::HalfLineR => write!(f, "half_line_R")?,
            RegionKind::HalfLineL => write!(f, "half_line_L")?,
            RegionKind::OriginDisk(r) => write!(f, "origin_disk({r})")?,
            RegionKind::Complement(inner) => write!(f, "complement({inner})")?,
        }
        if self.thickening > 0 {
            write!(f, "+{}", self.thickening)?;
        }
        Ok(())
    }
}

/// Config form: `{"kind": "origin_disk", "radius": 2, "thickening": 1}`;
/// complements carry the inner region under `"of"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(default)]
    pub thickening: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<Box<RegionJson>>,
}

impl TryFrom<RegionJson> for Region {
    type Error = Error;

    fn try_from(j: RegionJson) -> Result<Self> {
        let kind = match j.kind.as_str() {
            "full" => RegionKind::Full,
            "half_plane_H" => RegionKind::HalfPlaneH,
            "boundary_line" => RegionKind::BoundaryLine,
            "half_line_R" => RegionKind::HalfLineR,
            "half_line_L" => RegionKind::HalfLineL,
            "origin_disk" => RegionKind::OriginDisk(
                j.radius.ok_or_else(|| Error::Parse("origin_disk needs a radius".into()))?,
            ),
            "complement" => {
                let of = j.of.ok_or_else(|| Error::Parse("complement needs \"of\"".into()))?;
                RegionKind::Complement(Box::new(Region::try_from(*of)?))
            }
            other => return Err(Error::Parse(format!("unknown region kind {other:?}"))),
        };
        Ok(Region::new(kind, j.thickening))
    }
}

impl From<Region> for RegionJson {
    fn from(r: Region) -> Self {
        let (kind, radius, of) = match r.kind {
            RegionKind::Full => ("full", None, None),
            RegionKind::HalfPlaneH => ("half_plane_H", None, None),
            RegionKind::BoundaryLine => ("boundary_line", None, None),
            RegionKind::HalfLineR => ("half_line_R", None, None),
            RegionKind::HalfLineL => ("half_line_L", None, None),
            RegionKind::OriginDisk(k) => ("origin_disk", Some(k), None),
            RegionKind::Complement(inner) => ("complement", None, Some(Box::new(RegionJson::from(*inner)))),
        };
        RegionJson { kind: kind.into(), radius, thickening: r.thickening, of }
    }
}

/// Result of auditing a support against a list of regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportReport {
    pub inside: Vec<bool>,
    pub max_dist_boundary_line: u32,
    pub max_dist_origin: u32,
}

pub fn classify_support<'a>(sites: impl IntoIterator<Item = &'a Site>, regions: &[Region]) -> SupportReport {
    let sites: Vec<&Site> = sites.into_iter().collect();
    SupportReport {
        inside: regions.iter().map(|r| sites.iter().all(|s| r.contains(s))).collect(),
        max_dist_boundary_line: sites.iter().map(|s| s.y.unsigned_abs()).max().unwrap_or(0),
        max_dist_origin: sites.iter().map(|s| s.norm()).max().unwrap_or(0),
    }
}
