use rand::Rng;

use crate::error::ParamError;

const WORD_BITS: usize = 64;

/// Per-tick forgetting probability for a grudge with the given half-life.
///
/// A stored grudge survives `half_life` independent ticks with probability
/// one half, so `p = 1 - 2^(-1/half_life)`.
pub fn half_life_to_probability(half_life: f64) -> Result<f64, ParamError> {
    if !half_life.is_finite() || half_life <= 0.0 {
        return Err(ParamError::HalfLife(half_life));
    }
    // -expm1(-ln2 / T) keeps precision for very long half-lives.
    Ok(-(-std::f64::consts::LN_2 / half_life).exp_m1())
}

/// Decay schedule of a grudge list.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayParams {
    /// Grudges are never forgotten.
    Never,
    /// Grudges are forgotten with the given half-life, in ticks.
    HalfLife(f64),
}

impl DecayParams {
    pub fn half_life(half_life: f64) -> Result<Self, ParamError> {
        half_life_to_probability(half_life)?;
        Ok(DecayParams::HalfLife(half_life))
    }

    pub fn probability(&self) -> f64 {
        match *self {
            DecayParams::Never => 0.0,
            DecayParams::HalfLife(t) => half_life_to_probability(t).unwrap_or(0.0),
        }
    }
}

/// Capacity-limited grudge list over a fixed universe of agent ids.
///
/// Bit `i` set means "agent `i` defected on me (or on someone who told me)".
/// At most `capacity` bits are ever set; once the list is full further
/// records are dropped until decay clears a slot.
#[derive(Clone, Debug, PartialEq)]
pub struct MemoryStore {
    words: Vec<u64>,
    universe: usize,
    capacity: usize,
    decay_probability: f64,
    // ln(1 - p), used to draw geometric gaps between forgotten grudges.
    ln_keep: f64,
    // keep_all[n] = (1 - p)^n, chance that n grudges all survive a tick.
    keep_all: Vec<f64>,
    true_count: usize,
}

impl MemoryStore {
    pub fn new(universe: usize, capacity: usize, decay_probability: f64) -> Result<Self, ParamError> {
        if capacity == 0 {
            return Err(ParamError::ZeroCapacity);
        }
        if !(0.0..=1.0).contains(&decay_probability) {
            return Err(ParamError::DecayProbability(decay_probability));
        }
        Ok(Self {
            words: vec![0; universe.div_ceil(WORD_BITS)],
            universe,
            capacity,
            decay_probability,
            ln_keep: (-decay_probability).ln_1p(),
            keep_all: (0..=capacity)
                .map(|n| (1.0 - decay_probability).powi(n as i32))
                .collect(),
            true_count: 0,
        })
    }

    /// Builds a store from an explicit bit pattern. Panics if the pattern
    /// holds more grudges than `capacity`.
    pub fn from_bits(bits: &[bool], capacity: usize, decay_probability: f64) -> Result<Self, ParamError> {
        let mut store = Self::new(bits.len(), capacity, decay_probability)?;
        for (id, _) in bits.iter().enumerate().filter(|(_, b)| **b) {
            assert!(store.record_defection(id), "pattern exceeds capacity {capacity}");
        }
        Ok(store)
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn decay_probability(&self) -> f64 {
        self.decay_probability
    }

    pub fn true_count(&self) -> usize {
        self.true_count
    }

    pub fn is_locked(&self) -> bool {
        self.true_count >= self.capacity
    }

    pub fn is_set(&self, id: usize) -> bool {
        self.check_range(id);
        self.words[id / WORD_BITS] >> (id % WORD_BITS) & 1 == 1
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.universe).map(|id| self.is_set(id)).collect()
    }

    /// Ids of every held grudge, ascending.
    pub fn grudges(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * WORD_BITS + bit)
            })
        })
    }

    /// Remembers a defection by `defector`. Returns whether a new grudge was
    /// stored; re-recording a held grudge or recording into a full list is a
    /// no-op.
    pub fn record_defection(&mut self, defector: usize) -> bool {
        self.check_range(defector);
        let mask = 1u64 << (defector % WORD_BITS);
        let word = &mut self.words[defector / WORD_BITS];
        if *word & mask != 0 || self.true_count >= self.capacity {
            return false;
        }
        *word |= mask;
        self.true_count += 1;
        true
    }

    /// One tick of forgetting: every held grudge is independently dropped
    /// with the store's decay probability. Returns the number dropped.
    ///
    /// Rather than one draw per grudge, this draws the geometric gap to the
    /// next dropped grudge, which yields the same per-grudge Bernoulli law
    /// with about `1 + p * true_count` draws per call.
    pub fn decay_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        if self.true_count == 0 || self.decay_probability == 0.0 {
            return 0;
        }
        if self.decay_probability >= 1.0 {
            let dropped = self.true_count;
            self.words.iter_mut().for_each(|w| *w = 0);
            self.true_count = 0;
            return dropped;
        }
        let mut dropped = 0;
        let mut remaining = self.true_count;
        let Some(mut skip) = self.draw_gap(remaining, rng) else {
            return 0;
        };
        for w in 0..self.words.len() {
            let mut pending = self.words[w];
            while pending != 0 {
                let bit = pending & pending.wrapping_neg();
                pending ^= bit;
                remaining -= 1;
                if skip > 0 {
                    skip -= 1;
                    continue;
                }
                self.words[w] ^= bit;
                dropped += 1;
                match self.draw_gap(remaining, rng) {
                    Some(gap) => skip = gap,
                    None => {
                        self.true_count -= dropped;
                        return dropped;
                    }
                }
            }
        }
        self.true_count -= dropped;
        dropped
    }

    // Number of survivors before the next dropped grudge, or `None` when all
    // `remaining` grudges survive. One uniform draw per call.
    fn draw_gap<R: Rng + ?Sized>(&self, remaining: usize, rng: &mut R) -> Option<usize> {
        let u: f64 = 1.0 - rng.random::<f64>();
        // gap >= remaining  <=>  u <= (1 - p)^remaining
        if remaining == 0 || u <= self.keep_all[remaining] {
            return None;
        }
        let gap = (u.ln() / self.ln_keep) as usize;
        Some(gap.min(remaining - 1))
    }

    /// Copies grudges held by `other` into `self`, lowest id first, until
    /// the list is full. Returns the number adopted.
    fn adopt_from(&mut self, other: &MemoryStore) -> usize {
        let mut adopted = 0;
        for (mine, theirs) in self.words.iter_mut().zip(&other.words) {
            let room = self.capacity - self.true_count;
            if room == 0 {
                break;
            }
            let mut fresh = theirs & !*mine;
            let n = fresh.count_ones() as usize;
            if n <= room {
                *mine |= fresh;
                self.true_count += n;
                adopted += n;
            } else {
                for _ in 0..room {
                    let bit = fresh & fresh.wrapping_neg();
                    fresh ^= bit;
                    *mine |= bit;
                }
                self.true_count += room;
                adopted += room;
            }
        }
        adopted
    }

    fn check_range(&self, id: usize) {
        assert!(
            id < self.universe,
            "agent id {id} outside memory universe of {}",
            self.universe
        );
    }
}

/// Exchange of experiences between two gossiping agents.
///
/// Both lists move toward the elementwise OR of the two inputs. Each list
/// adopts the other's grudges in ascending id order and stops adopting once
/// it is full; grudges already held are never cleared. Returns the number of
/// grudges adopted by `a` and by `b`.
pub fn gossip_merge(a: &mut MemoryStore, b: &mut MemoryStore) -> (usize, usize) {
    assert_eq!(
        a.universe, b.universe,
        "gossip between memories over different universes"
    );
    // b's adoptions only come from the part of a that b lacks, which a's own
    // adoptions from b cannot change, so sequential updates see the inputs.
    let into_a = a.adopt_from(b);
    let into_b = b.adopt_from(a);
    (into_a, into_b)
}
