use crate::error::ParamError;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Direction of this vector in radians, in `(-pi, pi]`.
    pub fn bearing(self) -> f64 {
        self.y.atan2(self.x)
    }
}

/// Square world of side `L` whose opposite edges are glued together.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusGeometry {
    side: f64,
}

impl TorusGeometry {
    pub fn new(side: f64) -> Result<Self, ParamError> {
        if !side.is_finite() || side <= 0.0 {
            return Err(ParamError::Side(side));
        }
        Ok(Self { side })
    }

    /// Torus sized so that `population` agents sit at `density` per unit area.
    pub fn for_population(population: usize, density: f64) -> Result<Self, ParamError> {
        Self::new(world_side_for_population(population, density)?)
    }

    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn area(&self) -> f64 {
        self.side * self.side
    }

    pub fn wrap_coord(&self, v: f64) -> f64 {
        // steps are far shorter than the side, so one fold usually suffices
        let w = if (0.0..self.side).contains(&v) {
            return v;
        } else if v < 0.0 && v >= -self.side {
            v + self.side
        } else if v >= self.side && v < 2.0 * self.side {
            v - self.side
        } else {
            v.rem_euclid(self.side)
        };
        // rem_euclid rounds tiny negative inputs up to exactly `side`
        if w >= self.side {
            0.0
        } else {
            w
        }
    }

    pub fn wrap(&self, p: Vec2) -> Vec2 {
        Vec2::new(self.wrap_coord(p.x), self.wrap_coord(p.y))
    }

    pub fn contains(&self, p: Vec2) -> bool {
        (0.0..self.side).contains(&p.x) && (0.0..self.side).contains(&p.y)
    }

    /// Shortest signed displacement from `from` to `to` under periodic
    /// boundaries; each component lies in `[-L/2, L/2]`.
    pub fn displacement(&self, from: Vec2, to: Vec2) -> Vec2 {
        Vec2::new(self.min_image(to.x - from.x), self.min_image(to.y - from.y))
    }

    fn min_image(&self, d: f64) -> f64 {
        let half = 0.5 * self.side;
        if d > half {
            d - self.side
        } else if d < -half {
            d + self.side
        } else {
            d
        }
    }
}

/// Side length of a square world holding `population` agents at `density`
/// agents per unit area: `L = sqrt(N / d)`.
pub fn world_side_for_population(population: usize, density: f64) -> Result<f64, ParamError> {
    if population < 2 {
        return Err(ParamError::Population(population));
    }
    if !density.is_finite() || density <= 0.0 {
        return Err(ParamError::Density(density));
    }
    Ok((population as f64 / density).sqrt())
}

/// Minimum-image Euclidean distance between two points on the torus.
pub fn torus_distance(a: Vec2, b: Vec2, geometry: &TorusGeometry) -> f64 {
    let l = geometry.side;
    let dx = (a.x - b.x).abs();
    let dy = (a.y - b.y).abs();
    let dx = dx.min(l - dx);
    let dy = dy.min(l - dy);
    (dx * dx + dy * dy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus(l: f64) -> TorusGeometry {
        TorusGeometry::new(l).unwrap()
    }

    #[test]
    fn side_for_population() {
        assert_eq!(world_side_for_population(100, 1.0).unwrap(), 10.0);
        // sqrt(140 / 0.05)
        let l = world_side_for_population(140, 0.05).unwrap();
        assert!((l - 52.91502622129181).abs() < 1e-12);
    }

    #[test]
    fn area_scales_with_population() {
        let small = TorusGeometry::for_population(40, 0.05).unwrap();
        let big = TorusGeometry::for_population(160, 0.05).unwrap();
        assert!((big.area() / small.area() - 4.0).abs() < 1e-12);
        assert!((small.area() * 0.05 - 40.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_world_inputs() {
        assert!(world_side_for_population(1, 1.0).is_err());
        assert!(world_side_for_population(10, 0.0).is_err());
        assert!(world_side_for_population(10, -1.0).is_err());
        assert!(world_side_for_population(10, f64::NAN).is_err());
    }

    #[test]
    fn distance_examples() {
        let g = torus(10.0);
        assert_eq!(torus_distance(Vec2::new(0.0, 0.0), Vec2::new(0.0, 0.0), &g), 0.0);
        let wrapped = torus_distance(Vec2::new(0.5, 0.0), Vec2::new(9.5, 0.0), &g);
        assert!((wrapped - 1.0).abs() < 1e-12);
        assert_eq!(torus_distance(Vec2::new(1.0, 1.0), Vec2::new(4.0, 5.0), &g), 5.0);
    }

    #[test]
    fn displacement_crosses_the_seam() {
        let g = torus(10.0);
        let d = g.displacement(Vec2::new(9.5, 5.0), Vec2::new(0.5, 5.0));
        assert!((d.x - 1.0).abs() < 1e-12 && d.y == 0.0);
        let back = g.displacement(Vec2::new(0.5, 5.0), Vec2::new(9.5, 5.0));
        assert!((back.x + 1.0).abs() < 1e-12);
    }

    #[test]
    fn wrap_stays_inside() {
        let g = torus(10.0);
        for v in [-1e-18, -10.0, -0.3, 10.0, 23.7, 9.999999999999999] {
            let w = g.wrap_coord(v);
            assert!((0.0..10.0).contains(&w), "{v} -> {w}");
        }
    }
}
