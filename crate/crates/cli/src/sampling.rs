//! Seeded random separated collections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zonoforge::setcalc::{separated_from_all, Collection, SubsetMask};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random `r`-separated collection on `[n]`: subsets are visited in a
/// random order and kept, while the collection has fewer than a random
/// target size, whenever they stay separated from everything kept so far.
pub fn random_separated<R: Rng>(rng: &mut R, n: usize, r: usize, max_len: usize) -> Collection {
    let mut pool: Vec<SubsetMask> = SubsetMask::all(n).expect("small ground set").collect();
    pool.shuffle(rng);
    let target = rng.gen_range(0..=max_len);
    let mut current = Collection::empty(n).expect("small ground set");
    for x in pool {
        if current.len() >= target {
            break;
        }
        if separated_from_all(x, &current, r) {
            let mut members = current.members().to_vec();
            members.push(x);
            current = Collection::new(n, members).expect("one ground set");
        }
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use zonoforge::setcalc::is_r_separated_collection;

    #[test]
    fn samples_are_separated_and_reproducible() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..50 {
            let x = random_separated(&mut a, 5, 2, 8);
            assert!(is_r_separated_collection(&x, 2).ok);
            assert!(x.len() <= 8);
            assert_eq!(x, random_separated(&mut b, 5, 2, 8));
        }
    }
}
