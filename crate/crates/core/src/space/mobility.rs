use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::geometry::{TorusGeometry, Vec2};

/// Random-walk and private-space parameters shared by all agents.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MobilityParams {
    /// Distance travelled per tick.
    pub step_length: f64,
    /// Largest heading change per tick, radians.
    pub heading_jitter: f64,
    /// Two agents closer than this play a round.
    pub interaction_radius: f64,
    /// Ticks after a round during which the same pair cannot play again.
    pub separation_cooldown: u64,
}

impl Default for MobilityParams {
    fn default() -> Self {
        Self {
            step_length: 0.3,
            heading_jitter: 50f64.to_radians(),
            interaction_radius: 1.0,
            separation_cooldown: 5,
        }
    }
}

/// Position and heading of an agent on the torus. The heading is kept as a
/// unit direction vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Kinematics {
    pub position: Vec2,
    direction: Vec2,
}

impl Kinematics {
    pub fn new(position: Vec2, heading: f64) -> Self {
        let (sin, cos) = heading.sin_cos();
        Self {
            position,
            direction: Vec2::new(cos, sin),
        }
    }

    /// Uniform position on the torus and uniform heading.
    pub fn random<R: Rng + ?Sized>(geometry: &TorusGeometry, rng: &mut R) -> Self {
        let l = geometry.side();
        let x = geometry.wrap_coord(rng.random::<f64>() * l);
        let y = geometry.wrap_coord(rng.random::<f64>() * l);
        let heading = rng.random::<f64>() * TAU;
        Self::new(Vec2::new(x, y), heading)
    }

    /// Heading in radians, `[0, 2pi)`.
    pub fn heading(&self) -> f64 {
        let h = self.direction.bearing();
        if h < 0.0 {
            (h + TAU).min(TAU.next_down())
        } else {
            h
        }
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn set_heading(&mut self, heading: f64) {
        *self = Self::new(self.position, heading);
    }

    fn turn(&mut self, angle: f64) {
        let (sin, cos) = sin_cos(angle);
        let Vec2 { x, y } = self.direction;
        let (x, y) = (x * cos - y * sin, x * sin + y * cos);
        // first-order renormalisation keeps |direction| = 1 against drift
        let fix = 1.5 - 0.5 * (x * x + y * y);
        self.direction = Vec2::new(x * fix, y * fix);
    }

    fn point_along(&mut self, v: Vec2) {
        let len = v.length();
        self.direction = Vec2::new(v.x / len, v.y / len);
    }
}

/// sin and cos with a Taylor fast path for the small angles of a heading
/// wiggle; pure arithmetic, so identical on every platform.
fn sin_cos(a: f64) -> (f64, f64) {
    if a.abs() > 1.0 {
        return a.sin_cos();
    }
    let a2 = a * a;
    // terms through a^19 / 19! and a^18 / 18!; truncation < 1e-17 for |a| <= 1
    let mut s = 1.0 / 121_645_100_408_832_000.0;
    let mut c = 1.0 / 6_402_373_705_728_000.0;
    for &(ks, kc) in &[
        (-1.0 / 355_687_428_096_000.0, -1.0 / 20_922_789_888_000.0),
        (1.0 / 1_307_674_368_000.0, 1.0 / 87_178_291_200.0),
        (-1.0 / 6_227_020_800.0, -1.0 / 479_001_600.0),
        (1.0 / 39_916_800.0, 1.0 / 3_628_800.0),
        (-1.0 / 362_880.0, -1.0 / 40_320.0),
        (1.0 / 5_040.0, 1.0 / 720.0),
        (-1.0 / 120.0, -1.0 / 24.0),
        (1.0 / 6.0, 1.0 / 2.0),
        (-1.0, -1.0),
    ] {
        s = s * a2 + ks;
        c = c * a2 + kc;
    }
    // s and c now hold -sin(a)/a and -cos(a) up to the leading term
    (-s * a, -c)
}

/// One random-walk tick: wiggle the heading by up to `heading_jitter` either
/// way, then step forward and wrap onto the torus. Always consumes exactly one
/// random draw.
pub fn move_agent<R: Rng + ?Sized>(
    agent: &mut Kinematics,
    mobility: &MobilityParams,
    geometry: &TorusGeometry,
    rng: &mut R,
) {
    let wiggle = (2.0 * rng.random::<f64>() - 1.0) * mobility.heading_jitter;
    if wiggle != 0.0 {
        agent.turn(wiggle);
    }
    if mobility.step_length != 0.0 {
        let d = agent.direction;
        let p = agent.position;
        agent.position = geometry.wrap(Vec2::new(
            p.x + mobility.step_length * d.x,
            p.y + mobility.step_length * d.y,
        ));
    }
}

/// Turns two agents that just played directly away from each other.
/// Coincident agents leave in opposite random directions, drawing one angle.
pub fn separate<R: Rng + ?Sized>(
    a: &mut Kinematics,
    b: &mut Kinematics,
    geometry: &TorusGeometry,
    rng: &mut R,
) {
    let towards_b = geometry.displacement(a.position, b.position);
    if towards_b.x == 0.0 && towards_b.y == 0.0 {
        let theta = rng.random::<f64>() * TAU;
        a.set_heading(theta);
        b.set_heading(theta + PI);
    } else {
        a.point_along(Vec2::new(-towards_b.x, -towards_b.y));
        b.point_along(towards_b);
    }
}
