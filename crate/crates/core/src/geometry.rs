//! Boxes and alignment axes in page coordinates (CSS pixels, origin top-left).

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rect {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub const fn new(left: f64, top: f64, width: f64, height: f64) -> Self {
        Self { left, top, width, height }
    }

    #[inline]
    pub fn right(&self) -> f64 {
        self.left + self.width
    }

    #[inline]
    pub fn bottom(&self) -> f64 {
        self.top + self.height
    }

    #[inline]
    pub fn h_center(&self) -> f64 {
        self.left + self.width / 2.0
    }

    #[inline]
    pub fn v_center(&self) -> f64 {
        self.top + self.height / 2.0
    }

    /// The six alignment lines of the box: left, top, right, bottom and the
    /// two center lines.
    pub fn axes(&self) -> [Axis; 6] {
        [
            Axis::Vertical(self.left),
            Axis::Horizontal(self.top),
            Axis::Vertical(self.right()),
            Axis::Horizontal(self.bottom()),
            Axis::Vertical(self.h_center()),
            Axis::Horizontal(self.v_center()),
        ]
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Self { left: self.left + dx, top: self.top + dy, ..*self }
    }

    /// Whether `axis` crosses this closed box, widened by `tolerance` pixels
    /// on each side.
    pub fn intersects_axis(&self, axis: Axis, tolerance: f64) -> bool {
        match axis {
            Axis::Vertical(x) => self.left - tolerance <= x && x <= self.right() + tolerance,
            Axis::Horizontal(y) => self.top - tolerance <= y && y <= self.bottom() + tolerance,
        }
    }
}

/// An infinite alignment line. `Vertical(x)` is the line at abscissa `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Axis {
    Vertical(f64),
    Horizontal(f64),
}
