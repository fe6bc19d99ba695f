use super::geometry::{torus_distance, TorusGeometry, Vec2};

/// Finds the rounds to play this tick.
///
/// Candidates are pairs closer than `radius` for which `cooling(a, b)` is
/// false. Candidates are matched greedily, closest pair first with ties
/// broken by ascending `(low id, high id)`, so every agent plays at most once
/// per tick. Ordering by distance rather than by id keeps crowded encounters
/// from favouring whichever strategy holds the low ids.
pub fn detect_encounters<F>(positions: &[Vec2], radius: f64, geometry: &TorusGeometry, cooling: F) -> Vec<(usize, usize)>
where
    F: Fn(usize, usize) -> bool,
{
    let mut detector = EncounterDetector::default();
    let mut out = Vec::new();
    detector.detect(positions, radius, geometry, cooling, &mut out);
    out
}

/// Reference all-pairs scan; same contract as [`detect_encounters`].
pub fn detect_encounters_naive<F>(
    positions: &[Vec2],
    radius: f64,
    geometry: &TorusGeometry,
    cooling: F,
) -> Vec<(usize, usize)>
where
    F: Fn(usize, usize) -> bool,
{
    let mut candidates = Vec::new();
    for a in 0..positions.len() {
        for b in a + 1..positions.len() {
            let d = torus_distance(positions[a], positions[b], geometry);
            if d < radius && !cooling(a, b) {
                candidates.push(Candidate { distance: d, a, b });
            }
        }
    }
    candidates.sort_by(Candidate::order);
    greedy_match(&candidates, positions.len())
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    distance: f64,
    a: usize,
    b: usize,
}

impl Candidate {
    fn order(x: &Candidate, y: &Candidate) -> std::cmp::Ordering {
        x.distance.total_cmp(&y.distance).then((x.a, x.b).cmp(&(y.a, y.b)))
    }
}

fn greedy_match(sorted: &[Candidate], n: usize) -> Vec<(usize, usize)> {
    let mut taken = vec![false; n];
    let mut pairs = Vec::new();
    for &Candidate { a, b, .. } in sorted {
        if !taken[a] && !taken[b] {
            taken[a] = true;
            taken[b] = true;
            pairs.push((a, b));
        }
    }
    pairs
}

/// Encounter detection over a uniform binning grid, with scratch buffers
/// reused between ticks. Produces exactly the pairs of the all-pairs scan.
#[derive(Debug, Default)]
pub struct EncounterDetector {
    head: Vec<usize>,
    next: Vec<usize>,
    cell_of: Vec<(usize, usize)>,
    candidates: Vec<Candidate>,
    taken: Vec<bool>,
}

const NIL: usize = usize::MAX;

impl EncounterDetector {
    pub fn detect<F>(
        &mut self,
        positions: &[Vec2],
        radius: f64,
        geometry: &TorusGeometry,
        cooling: F,
        out: &mut Vec<(usize, usize)>,
    ) where
        F: Fn(usize, usize) -> bool,
    {
        out.clear();
        let n = positions.len();
        let side = geometry.side();
        // slightly wider cells absorb rounding in the cell assignment
        let cells = (side / (radius * 1.000_001)).floor() as usize;
        self.candidates.clear();
        if cells < 3 {
            for a in 0..n {
                for b in a + 1..n {
                    self.consider(a, b, positions[a], positions[b], radius, geometry, &cooling);
                }
            }
        } else {
            self.bin(positions, side, cells);
            // Half-shell scan: each unordered pair of neighbouring cells is
            // visited once, from the cell whose forward neighbour the other is.
            for (a, &pa) in positions.iter().enumerate() {
                let (cx, cy) = self.cell_of[a];
                let mut b = self.next[a];
                while b != NIL {
                    self.consider(a, b, pa, positions[b], radius, geometry, &cooling);
                    b = self.next[b];
                }
                let left = if cx == 0 { cells - 1 } else { cx - 1 };
                let right = if cx + 1 == cells { 0 } else { cx + 1 };
                let up = if cy + 1 == cells { 0 } else { cy + 1 };
                for c in [cy * cells + right, up * cells + left, up * cells + cx, up * cells + right] {
                    let mut b = self.head[c];
                    while b != NIL {
                        self.consider(a, b, pa, positions[b], radius, geometry, &cooling);
                        b = self.next[b];
                    }
                }
            }
            for &(x, y) in &self.cell_of {
                self.head[y * cells + x] = NIL;
            }
        }
        self.candidates.sort_unstable_by(Candidate::order);

        self.taken.clear();
        self.taken.resize(n, false);
        for &Candidate { a, b, .. } in &self.candidates {
            if !self.taken[a] && !self.taken[b] {
                self.taken[a] = true;
                self.taken[b] = true;
                out.push((a, b));
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    #[inline]
    fn consider<F>(&mut self, a: usize, b: usize, pa: Vec2, pb: Vec2, radius: f64, geometry: &TorusGeometry, cooling: &F)
    where
        F: Fn(usize, usize) -> bool,
    {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let distance = torus_distance(pa, pb, geometry);
        if distance < radius && !cooling(a, b) {
            self.candidates.push(Candidate { distance, a, b });
        }
    }

    // Links agents into per-cell lists. `head` is left all-NIL after each
    // detection pass, so only a change of grid size needs a full reset.
    fn bin(&mut self, positions: &[Vec2], side: f64, cells: usize) {
        if self.head.len() != cells * cells {
            self.head.clear();
            self.head.resize(cells * cells, NIL);
        }
        self.next.clear();
        self.next.resize(positions.len(), NIL);
        self.cell_of.clear();
        let scale = cells as f64 / side;
        self.cell_of.extend(positions.iter().map(|p| {
            let cx = ((p.x * scale) as usize).min(cells - 1);
            let cy = ((p.y * scale) as usize).min(cells - 1);
            (cx, cy)
        }));
        for i in (0..positions.len()).rev() {
            let (cx, cy) = self.cell_of[i];
            let c = cy * cells + cx;
            self.next[i] = self.head[c];
            self.head[c] = i;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn never(_: usize, _: usize) -> bool {
        false
    }

    #[test]
    fn far_apart_agents_do_not_meet() {
        let g = TorusGeometry::new(10.0).unwrap();
        let pos = [Vec2::new(1.0, 1.0), Vec2::new(5.0, 5.0)];
        assert!(detect_encounters(&pos, 1.0, &g, never).is_empty());
    }

    #[test]
    fn three_way_crowd_pairs_the_closest() {
        let g = TorusGeometry::new(10.0).unwrap();
        let pos = [Vec2::new(9.0, 9.0), Vec2::new(5.0, 5.0), Vec2::new(5.4, 5.0), Vec2::new(5.5, 5.1)];
        assert_eq!(detect_encounters(&pos, 1.0, &g, never), vec![(2, 3)]);
    }

    #[test]
    fn equidistant_crowd_pairs_lowest_ids() {
        let g = TorusGeometry::new(10.0).unwrap();
        // equilateral triangle of side 0.5
        let h = 0.25 * 3f64.sqrt();
        let pos = [Vec2::new(9.0, 9.0), Vec2::new(5.0, 5.0), Vec2::new(5.5, 5.0), Vec2::new(5.25, 5.0 + h)];
        let d12 = torus_distance(pos[1], pos[2], &g);
        let d13 = torus_distance(pos[1], pos[3], &g);
        let d23 = torus_distance(pos[2], pos[3], &g);
        if d12 == d13 && d13 == d23 {
            assert_eq!(detect_encounters(&pos, 1.0, &g, never), vec![(1, 2)]);
        }
        let square = [Vec2::new(1.0, 1.0), Vec2::new(1.5, 1.0), Vec2::new(1.0, 1.5), Vec2::new(1.5, 1.5)];
        assert_eq!(detect_encounters(&square, 0.6, &g, never), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn cooling_pair_is_skipped() {
        let g = TorusGeometry::new(10.0).unwrap();
        let pos = [Vec2::new(5.0, 5.0), Vec2::new(5.2, 5.0), Vec2::new(5.1, 5.1)];
        let pairs = detect_encounters(&pos, 1.0, &g, |a, b| (a, b) == (0, 1));
        assert_eq!(pairs, vec![(0, 2)]);
    }

    #[test]
    fn meeting_across_the_seam() {
        let g = TorusGeometry::new(10.0).unwrap();
        let pos = [Vec2::new(0.1, 5.0), Vec2::new(9.8, 5.1)];
        assert_eq!(detect_encounters(&pos, 1.0, &g, never), vec![(0, 1)]);
    }

    proptest! {
        #[test]
        fn grid_matches_all_pairs_scan(
            side in 2.0f64..30.0,
            radius in 0.3f64..2.0,
            raw in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..80),
            cool_mod in 1usize..7,
        ) {
            let g = TorusGeometry::new(side).unwrap();
            let pos: Vec<Vec2> = raw.iter().map(|&(x, y)| g.wrap(Vec2::new(x * side, y * side))).collect();
            let cooling = |a: usize, b: usize| (a * 31 + b) % (cool_mod + 3) == 0;
            let fast = detect_encounters(&pos, radius, &g, cooling);
            let slow = detect_encounters_naive(&pos, radius, &g, cooling);
            prop_assert_eq!(&fast, &slow);

            let mut seen = vec![false; pos.len()];
            for &(a, b) in &fast {
                prop_assert!(a < b);
                prop_assert!(!seen[a] && !seen[b]);
                seen[a] = true;
                seen[b] = true;
                prop_assert!(torus_distance(pos[a], pos[b], &g) < radius);
            }
        }
    }
}
