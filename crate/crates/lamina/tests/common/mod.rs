//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lamina::{portrait_from_chords, Angle, Chord, PortraitPlus};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ch(s: &str) -> Chord {
    s.parse().unwrap()
}

pub fn plus(v: &[&str], d: u32) -> PortraitPlus {
    let c: Vec<Chord> = v.iter().map(|s| ch(s)).collect();
    portrait_from_chords(&c, d).unwrap()
}

/// A random full critical portrait with endpoint denominators at most `d^4`.
pub fn random_portrait(rng: &mut ChaCha8Rng, d: u32) -> Vec<Chord> {
    let bound = (d as i64).pow(4);
    loop {
        let mut chosen: Vec<Chord> = vec![];
        for _ in 0..64 {
            if chosen.len() == d as usize - 1 {
                break;
            }
            let q = rng.gen_range(1..=bound);
            let x = Angle::new(rng.gen_range(0..q), q);
            let k = rng.gen_range(1..d as i64);
            let y = x.shift(Angle::new(k, d as i64).value());
            if y.denom() > num_bigint::BigUint::from(bound as u64) {
                continue;
            }
            let c = Chord::new(x, y);
            if chosen.iter().all(|o| o != &c && !o.linked(&c)) {
                chosen.push(c);
            }
        }
        if chosen.len() == d as usize - 1 && portrait_from_chords(&chosen, d).is_ok() {
            return chosen;
        }
    }
}

/// `n` portraits of degree `d` from a fixed seed.
pub fn random_portraits(seed: u64, d: u32, n: usize) -> Vec<Vec<Chord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (d as u64) << 32);
    (0..n).map(|_| random_portrait(&mut rng, d)).collect()
}

/// Every chord over denominator `q` whose image lies in `prev` and which
/// crosses no chord of `walls`.
fn preimage_layer(prev: &BTreeSet<Chord>, walls: &[Chord], q: i64, d: u32) -> BTreeSet<Chord> {
    let mut out = BTreeSet::new();
    for i in 0..q {
        for j in i + 1..q {
            let c = Chord::new(Angle::new(i, q), Angle::new(j, q));
            if prev.contains(&c.sigma(d)) && walls.iter().all(|w| !w.linked(&c)) {
                out.insert(c);
            }
        }
    }
    out
}

/// Pullbacks of the quadratic diameter `{1/4, 3/4}` through `depth`
/// generations, by scanning all chords over `2^(depth + 2)`.
pub fn chebyshev_by_enumeration(depth: u32) -> BTreeSet<Chord> {
    let wall = ch("1/4-3/4");
    let mut all: BTreeSet<Chord> = [wall.clone()].into();
    let mut layer = all.clone();
    for g in 1..=depth {
        let q = 1i64 << (g + 2);
        layer = preimage_layer(&layer, std::slice::from_ref(&wall), q, 2);
        layer.retain(|c| !all.contains(c));
        all.extend(layer.iter().cloned());
    }
    all
}

/// The closed form `{t, 1 - t}` with `t = i/2^k`, `i` odd, `t < 1/2`.
pub fn chebyshev_closed_form(kmax: u32) -> BTreeSet<Chord> {
    let mut out = BTreeSet::new();
    for k in 2..=kmax {
        let q = 1i64 << k;
        for i in (1..q / 2).step_by(2) {
            out.insert(Chord::new(Angle::new(i, q), Angle::new(q - i, q)));
        }
    }
    out
}

/// Leaves generated by the orbit `{1/3, 2/3}` through `depth` generations:
/// the leaf pulls back to itself and `{1/6, 5/6}`, and every later leaf to
/// the preimage pairs not crossing the critical chord `{1/6, 2/3}`.
pub fn basilica(depth: u32) -> BTreeSet<Chord> {
    let wall = ch("1/6-2/3");
    let mut leaves: BTreeSet<Chord> = [ch("1/3-2/3"), ch("1/6-5/6")].into();
    let mut frontier: BTreeSet<Chord> = [ch("1/6-5/6")].into();
    for _ in 1..depth {
        let mut next = BTreeSet::new();
        for l in &frontier {
            for x in l.a().preimages(2) {
                for y in l.b().preimages(2) {
                    let c = Chord::new(x.clone(), y.clone());
                    if !c.linked(&wall) && !leaves.contains(&c) {
                        next.insert(c);
                    }
                }
            }
        }
        leaves.extend(next.iter().cloned());
        frontier = next;
    }
    leaves
}

/// Periodic endpoints within one class share their period.
pub fn classes_share_periods(classes: &[Vec<Angle>], d: u32) -> bool {
    classes.iter().all(|c| {
        let periods: BTreeSet<u32> = c.iter().map(|x| x.classify(d)).filter(|o| o.is_periodic()).map(|o| o.period).collect();
        periods.len() <= 1
    })
}
