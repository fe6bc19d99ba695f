//! Grudge lists on their own: half-life, forgetting, the capacity lock and
//! a gossip merge.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reciprosim::model::{gossip_merge, half_life_to_probability, MemoryStore};

fn main() {
    let half_life = 800.0;
    let p = half_life_to_probability(half_life).unwrap();
    println!("half-life {half_life} ticks -> per-tick flip probability {p:.6e}");

    let bits = vec![true; 10_000];
    let mut store = MemoryStore::from_bits(&bits, bits.len(), p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("\n tick  remembered");
    for tick in 1..=3_200 {
        store.decay_step(&mut rng);
        if tick % 400 == 0 {
            println!("{tick:5}  {:.4}", store.true_count() as f64 / 10_000.0);
        }
    }

    // capacity 2: the third defector cannot be stored until one fades
    let mut small = MemoryStore::new(5, 2, 0.5).unwrap();
    small.record_defection(1);
    small.record_defection(3);
    let stored = small.record_defection(4);
    println!("\nlocked list {:?}, third grudge stored: {stored}", small.to_bits());
    while small.is_locked() {
        small.decay_step(&mut rng);
    }
    println!("after forgetting {:?}, retry stored: {}", small.to_bits(), small.record_defection(4));

    let mut a = MemoryStore::from_bits(&[true, false, true, false], 2, 0.0).unwrap();
    let mut b = MemoryStore::from_bits(&[false, true, false, true], 3, 0.0).unwrap();
    let adopted = gossip_merge(&mut a, &mut b);
    println!("\ngossip: a {:?} b {:?}, adopted {adopted:?}", a.to_bits(), b.to_bits());
}
