//! Lattice atlases of units, primes and non-principal prime ideals.
//!
//! A point ζ is prime exactly when N(ζ) ∈ T. The pq members of T are never
//! the norm of an ideal, let alone of an element, and an element of norm p²
//! with p inert generates the same ideal as p, so it is an associate of p.

use std::fmt::Write as _;

use crate::arithmetic::kronecker;
use crate::error::{Error, Result};
use crate::field::{FieldParams, RingElement};
use crate::ideals::{IdealClass, IdealPair, IdealSpec};
use crate::sieve::NormSet;

/// Inclusive box in τ-coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    pub x_min: i64,
    pub x_max: i64,
    pub y_min: i64,
    pub y_max: i64,
}

impl Region {
    pub fn new(x_min: i64, x_max: i64, y_min: i64, y_max: i64) -> Result<Self> {
        if x_min > x_max || y_min > y_max {
            return Err(Error::Domain(format!(
                "empty region x ∈ [{x_min}, {x_max}], y ∈ [{y_min}, {y_max}]"
            )));
        }
        Ok(Region {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// `|x|, |y| ≤ n`.
    pub fn symmetric(n: u32) -> Self {
        let n = i64::from(n);
        Region {
            x_min: -n,
            x_max: n,
            y_min: -n,
            y_max: n,
        }
    }

    pub fn width(&self) -> u64 {
        self.x_max.abs_diff(self.x_min) + 1
    }

    pub fn height(&self) -> u64 {
        self.y_max.abs_diff(self.y_min) + 1
    }

    pub fn point_count(&self) -> u64 {
        self.width().saturating_mul(self.height())
    }

    pub fn contains(&self, z: RingElement) -> bool {
        (self.x_min..=self.x_max).contains(&z.x) && (self.y_min..=self.y_max).contains(&z.y)
    }

    /// Row-major points, y outer ascending and x inner ascending.
    pub fn points(&self) -> impl Iterator<Item = RingElement> + '_ {
        (self.y_min..=self.y_max).flat_map(move |y| (self.x_min..=self.x_max).map(move |x| RingElement::new(x, y)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointClass {
    Unit,
    Prime,
    IdealClassI,
    IdealClassConjI,
    Other,
}

impl PointClass {
    pub const DRAWN: [PointClass; 4] = [
        PointClass::Unit,
        PointClass::Prime,
        PointClass::IdealClassI,
        PointClass::IdealClassConjI,
    ];

    /// Glyph used by the text renderer.
    pub fn symbol(self) -> char {
        match self {
            PointClass::Unit => 'U',
            PointClass::Prime => 'P',
            PointClass::IdealClassI => 'I',
            PointClass::IdealClassConjI => 'J',
            PointClass::Other => '.',
        }
    }

    pub fn css_class(self) -> &'static str {
        match self {
            PointClass::Unit => "unit",
            PointClass::Prime => "prime",
            PointClass::IdealClassI => "ideal",
            PointClass::IdealClassConjI => "ideal-conj",
            PointClass::Other => "other",
        }
    }

    /// Swaps the two ideal classes; what conjugation does to a point's class.
    pub fn conjugate(self) -> Self {
        match self {
            PointClass::IdealClassI => PointClass::IdealClassConjI,
            PointClass::IdealClassConjI => PointClass::IdealClassI,
            other => other,
        }
    }
}

fn classify_inner(field: &FieldParams, set: &NormSet, ideal: Option<&IdealPair>, z: RingElement) -> Result<PointClass> {
    if z.is_zero() {
        return Ok(PointClass::Other);
    }
    let n = field.norm(z)?;
    if n == 1 {
        return Ok(PointClass::Unit);
    }
    if set.is_prime_norm(n)? {
        return Ok(PointClass::Prime);
    }
    let Some(pair) = ideal else {
        return Ok(PointClass::Other);
    };
    Ok(match pair.classify_with_norm(set, z, n)? {
        IdealClass::ClassI => PointClass::IdealClassI,
        IdealClass::ClassConjI if pair.is_self_conjugate() => PointClass::IdealClassI,
        IdealClass::ClassConjI => PointClass::IdealClassConjI,
        IdealClass::None => PointClass::Other,
    })
}

/// Class of one lattice point. `set` must reach `N(z)`.
pub fn classify_point(
    field: &FieldParams,
    set: &NormSet,
    ideal: Option<IdealSpec>,
    z: RingElement,
) -> Result<PointClass> {
    let pair = ideal.map(|i| IdealPair::new(field, i)).transpose()?;
    classify_inner(field, set, pair.as_ref(), z)
}

/// Exact maximum of N over the box. For fixed y the form is convex in x, so
/// its positive part peaks at an end of the row and its negative part at the
/// integer nearest the vertex.
pub fn region_max_norm(field: &FieldParams, region: Region) -> Result<u64> {
    let mut best = 0u64;
    for y in region.y_min..=region.y_max {
        let vertex = if field.half_basis() { -(y / 2) } else { 0 };
        let candidates = [region.x_min, region.x_max, vertex - 1, vertex, vertex + 1];
        for x in candidates {
            let x = x.clamp(region.x_min, region.x_max);
            best = best.max(field.norm(RingElement::new(x, y))?);
        }
    }
    Ok(best)
}

/// Every point of a region with its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    region: Region,
    ideal: Option<IdealPair>,
    sieve_max: u64,
    points: Vec<(RingElement, PointClass)>,
}

impl Atlas {
    pub fn region(&self) -> Region {
        self.region
    }

    pub fn ideal(&self) -> Option<IdealSpec> {
        self.ideal.map(|p| p.ideal())
    }

    pub fn sieve_max(&self) -> u64 {
        self.sieve_max
    }

    pub fn points(&self) -> &[(RingElement, PointClass)] {
        &self.points
    }

    /// Class at `z`, if it lies in the region.
    pub fn class_at(&self, z: RingElement) -> Option<PointClass> {
        if !self.region.contains(z) || self.points.is_empty() {
            return None;
        }
        let row = (z.y - self.region.y_min) as u64;
        let col = (z.x - self.region.x_min) as u64;
        Some(self.points[(row * self.region.width() + col) as usize].1)
    }

    pub fn count(&self, class: PointClass) -> usize {
        self.points.iter().filter(|(_, c)| *c == class).count()
    }

    /// An atlas with no classified points, for header-only rendering.
    pub fn empty(region: Region) -> Self {
        Atlas {
            region,
            ideal: None,
            sieve_max: 0,
            points: Vec::new(),
        }
    }
}

pub fn enumerate_atlas(field: &FieldParams, region: Region, set: &NormSet, ideal: Option<IdealSpec>) -> Result<Atlas> {
    let pair = ideal.map(|i| IdealPair::new(field, i)).transpose()?;
    let points = region
        .points()
        .map(|z| classify_inner(field, set, pair.as_ref(), z).map(|c| (z, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Atlas {
        region,
        ideal: pair,
        sieve_max: set.max(),
        points,
    })
}

/// Styling for [`render_svg`].
#[derive(Debug, Clone, PartialEq)]
pub struct RenderConfig {
    /// Pixels per lattice step.
    pub cell_size: f64,
    pub unit_color: String,
    pub prime_color: String,
    pub ideal_color: String,
    pub ideal_conj_color: String,
    pub show_character_row: bool,
    pub character_row_width: usize,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            cell_size: 12.0,
            unit_color: "#1f5fbf".into(),
            prime_color: "#000000".into(),
            ideal_color: "#d62728".into(),
            ideal_conj_color: "#2ca02c".into(),
            show_character_row: true,
            character_row_width: 48,
        }
    }
}

impl RenderConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cell_size.is_finite() && self.cell_size > 0.0) {
            return Err(Error::Domain(format!(
                "cell size must be positive, got {}",
                self.cell_size
            )));
        }
        if self.character_row_width == 0 {
            return Err(Error::Domain("character row width must be positive".into()));
        }
        Ok(())
    }

    pub fn color(&self, class: PointClass) -> &str {
        match class {
            PointClass::Unit => &self.unit_color,
            PointClass::Prime => &self.prime_color,
            PointClass::IdealClassI => &self.ideal_color,
            PointClass::IdealClassConjI => &self.ideal_conj_color,
            PointClass::Other => "none",
        }
    }
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Planar position in lattice units: square grid for even d, staggered
/// (near-equilateral) grid for odd d.
pub fn plot_position(field: &FieldParams, z: RingElement) -> (f64, f64) {
    let (x, y) = (z.x as f64, z.y as f64);
    if field.half_basis() {
        (x + y / 2.0, y * SQRT3_2)
    } else {
        (x, y)
    }
}

/// First `width` values of χ_d as `+`, `-`, `0`.
pub fn character_row(field: &FieldParams, width: usize) -> String {
    (0..width as i64)
        .map(|x| match kronecker(field.discriminant(), x) {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect()
}

pub fn render_svg(atlas: &Atlas, field: &FieldParams, config: &RenderConfig) -> String {
    let cell = config.cell_size;
    let region = atlas.region;
    let corners = [
        RingElement::new(region.x_min, region.y_min),
        RingElement::new(region.x_max, region.y_min),
        RingElement::new(region.x_min, region.y_max),
        RingElement::new(region.x_max, region.y_max),
    ];
    let pos: Vec<(f64, f64)> = corners.iter().map(|&z| plot_position(field, z)).collect();
    let min_x = pos.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = pos.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = pos.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = pos.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);

    let margin = 2.0 * cell;
    let header = if config.show_character_row { 44.0 } else { 26.0 };
    let width = ((max_x - min_x) * cell + 2.0 * margin).max(320.0);
    let height = header + (max_y - min_y) * cell + 2.0 * margin;
    let sx = |px: f64| margin + (px - min_x) * cell;
    let sy = |py: f64| header + margin + (max_y - py) * cell;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");

    let mut title = format!("{}   d = {}", field.name(), field.discriminant());
    if let Some(i) = atlas.ideal() {
        let _ = write!(title, "   norm = {}, shift = {}", i.norm, i.shift);
    }
    let _ = writeln!(
        out,
        "<text class=\"title\" x=\"{:.2}\" y=\"18\" font-family=\"monospace\" font-size=\"14\">{title}</text>",
        margin
    );
    if config.show_character_row {
        let _ = writeln!(
            out,
            "<text class=\"character\" x=\"{:.2}\" y=\"36\" font-family=\"monospace\" font-size=\"12\">χ: {}</text>",
            margin,
            character_row(field, config.character_row_width)
        );
    }

    // rational integers on the horizontal axis, multiples of √r on the vertical
    if (region.y_min..=region.y_max).contains(&0) {
        let _ = writeln!(
            out,
            "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>",
            sx(min_x),
            sy(0.0),
            sx(max_x),
            sy(0.0)
        );
    }
    if min_x <= 0.0 && max_x >= 0.0 {
        let _ = writeln!(
            out,
            "<line class=\"axis\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#999999\" stroke-width=\"1\"/>",
            sx(0.0),
            sy(min_y),
            sx(0.0),
            sy(max_y)
        );
        let _ = writeln!(
            out,
            "<text class=\"axis-label\" x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"11\">√{}</text>",
            sx(0.0) + 4.0,
            sy(max_y) - 4.0,
            field.radicand()
        );
    }

    let radius = cell / 3.0;
    for &(z, class) in &atlas.points {
        if class == PointClass::Other {
            continue;
        }
        let (px, py) = plot_position(field, z);
        let _ = writeln!(
            out,
            "<circle class=\"{}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"{:.2}\" fill=\"{}\"/>",
            class.css_class(),
            sx(px),
            sy(py),
            radius,
            config.color(class)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// One glyph per point, top row `y_max`. Staggered grids put a space between
/// glyphs and indent each row half a cell further than the row below.
pub fn render_text(atlas: &Atlas, field: &FieldParams) -> String {
    let region = atlas.region;
    let staggered = field.half_basis();
    let mut out = String::new();
    for y in (region.y_min..=region.y_max).rev() {
        if staggered {
            out.extend(std::iter::repeat_n(' ', (y - region.y_min) as usize));
        }
        for x in region.x_min..=region.x_max {
            if staggered && x != region.x_min {
                out.push(' ');
            }
            let class = atlas.class_at(RingElement::new(x, y)).unwrap_or(PointClass::Other);
            out.push(class.symbol());
        }
        out.push('\n');
    }
    out
}
