//! Word lengths in the hexagonal Coxeter group from its contragredient
//! geometric representation.
//!
//! The group acts on 6-vectors `f` by `(σ_s f)_t = f_t − 2B(s,t) f_s`, where
//! `B(s,s) = 1`, `B(s,t) = 0` for commuting `s ≠ t` and `B(s,t) = −1` otherwise.
//! The orbit map `g ↦ g·(1,…,1)` is injective, so vectors stand in for
//! elements, and `(g·f0)_s < 0` exactly when `s` shortens `g` on the left.

use std::collections::{HashMap, HashSet};

use crate::hexgroup::Generator;

use super::OracleError;

/// Coordinates 0..3 are `a1..a3`, 3..6 are `b1..b3`.
fn bilinear(s: usize, t: usize) -> i64 {
    if s == t {
        return 1;
    }
    let (fs, ft) = (s / 3, t / 3);
    let (is, it) = (s % 3, t % 3);
    if fs != ft && is != it {
        0
    } else {
        -1
    }
}

fn reflect<T: Scalar>(f: &mut [T; 6], s: usize) {
    let fs = f[s];
    for t in 0..6 {
        if t == s {
            f[t] = -fs;
        } else if bilinear(s, t) == -1 {
            f[t] = f[t] + T::from(2) * fs;
        }
    }
}

trait Scalar: Copy + std::ops::Neg<Output = Self> + std::ops::Add<Output = Self> + std::ops::Mul<Output = Self> + From<i8> {}
impl<T> Scalar for T where T: Copy + std::ops::Neg<Output = T> + std::ops::Add<Output = T> + std::ops::Mul<Output = T> + From<i8> {}

fn rank(g: Generator) -> usize {
    // the numbering is fixed by name, not by the group module's ordering
    let name = g.name();
    let family = if name.starts_with('a') { 0 } else { 3 };
    family + (name.as_bytes()[1] - b'1') as usize
}

fn act<T: Scalar>(word: &[Generator]) -> [T; 6] {
    let mut f = [T::from(1); 6];
    for &g in word.iter().rev() {
        reflect(&mut f, rank(g));
    }
    f
}

/// Length of the element `word` represents, by descending the Tits cone.
pub fn descent_length(word: &[Generator]) -> usize {
    let mut f: [i128; 6] = act(word);
    let mut steps = 0;
    while let Some(s) = (0..6).find(|&s| f[s] < 0) {
        reflect(&mut f, s);
        steps += 1;
    }
    steps
}

/// Breadth-first search over the orbit of `(1,…,1)` to a fixed radius.
pub struct TitsOracle {
    radius: usize,
    distances: HashMap<[i32; 6], u8>,
    spheres: Vec<usize>,
}

impl TitsOracle {
    pub fn build(radius: usize) -> TitsOracle {
        let origin = [1i32; 6];
        let mut distances = HashMap::new();
        distances.insert(origin, 0u8);
        let mut frontier = vec![origin];
        let mut spheres = vec![1];
        for d in 1..=radius {
            let mut next = Vec::new();
            for f in &frontier {
                for s in 0..6 {
                    let mut g = *f;
                    reflect(&mut g, s);
                    if let std::collections::hash_map::Entry::Vacant(slot) = distances.entry(g) {
                        slot.insert(d as u8);
                        next.push(g);
                    }
                }
            }
            spheres.push(next.len());
            frontier = next;
        }
        TitsOracle { radius, distances, spheres }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of elements at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> &[usize] {
        &self.spheres
    }

    pub fn ball_size(&self) -> usize {
        self.distances.len()
    }

    /// Exact length of `word`, which may be up to twice the radius long.
    pub fn oracle_distance(&self, word: &[Generator]) -> Result<usize, OracleError> {
        if word.len() > 2 * self.radius {
            return Err(OracleError::CapExceeded { len: word.len(), radius: self.radius });
        }
        let start: [i32; 6] = act(word);
        if let Some(&d) = self.distances.get(&start) {
            return Ok(d as usize);
        }
        // A geodesic passes through the ball after at most len − radius
        // steps, so search outwards from the element until it is reached.
        let depth = word.len() - self.radius;
        let mut best = usize::MAX;
        let mut seen = HashSet::from([start]);
        let mut frontier = vec![start];
        for k in 1..=depth {
            let mut next = Vec::new();
            for f in &frontier {
                for s in 0..6 {
                    let mut g = *f;
                    reflect(&mut g, s);
                    if seen.insert(g) {
                        if let Some(&d) = self.distances.get(&g) {
                            best = best.min(k + d as usize);
                        }
                        next.push(g);
                    }
                }
            }
            frontier = next;
        }
        Ok(best)
    }

    pub fn contains(&self, word: &[Generator]) -> bool {
        self.distances.contains_key(&act::<i32>(word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgroup::parse_word;

    fn w(text: &str) -> Vec<Generator> {
        parse_word(text).unwrap()
    }

    #[test]
    fn spheres_follow_the_recurrence() {
        let oracle = TitsOracle::build(6);
        assert_eq!(oracle.sphere_sizes(), &[1, 6, 24, 90, 336, 1254, 4680]);
        assert_eq!(oracle.ball_size(), 6391);
    }

    #[test]
    fn small_words() {
        let oracle = TitsOracle::build(3);
        assert_eq!(oracle.oracle_distance(&w("a1 b2 a1")).unwrap(), 1);
        assert_eq!(oracle.oracle_distance(&[]).unwrap(), 0);
        assert_eq!(oracle.oracle_distance(&w("a1 b1 a1 b1 a2 b2")).unwrap(), 6);
        assert_eq!(oracle.oracle_distance(&w("a1 b1 a1 b1 a1 a1")).unwrap(), 4);
        assert!(oracle.oracle_distance(&w("a1 a1 a1 a1 a1 a1 a1")).is_err());
        assert_eq!(descent_length(&w("a1 b1 a1 b1")), 4);
        assert_eq!(descent_length(&w("a1 b2 a1")), 1);
    }
}
