//! Random instance families shared by the integration tests.

#![allow(dead_code)]

use invsemi::oracle::{close, Closure};
use invsemi::{Caps, PartialBijection, PbSystem};
use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Semilattice,
    Group,
    Clifford,
    Strict,
    General,
}

pub const FAMILIES: [Family; 5] = [Family::Semilattice, Family::Group, Family::Clifford, Family::Strict, Family::General];

fn from_images(n: usize, map: &[(usize, usize)]) -> PartialBijection {
    let mut img = vec![None; n];
    for &(x, y) in map {
        img[x] = Some(y);
    }
    PartialBijection::new(&img).expect("injective by construction")
}

/// A uniformly random partial injection in which each point is defined
/// with probability `p`.
pub fn random_pb<R: Rng>(rng: &mut R, n: usize, p: f64) -> PartialBijection {
    let dom: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
    let mut ran: Vec<usize> = (0..n).collect();
    ran.shuffle(rng);
    from_images(n, &dom.iter().copied().zip(ran).collect::<Vec<_>>())
}

pub fn random_partial_identity<R: Rng>(rng: &mut R, n: usize, p: f64) -> PartialBijection {
    PartialBijection::partial_identity(n, (0..n).filter(|_| rng.gen_bool(p)))
}

/// A random permutation of `support`, undefined elsewhere.
pub fn random_perm_on<R: Rng>(rng: &mut R, n: usize, support: &[usize]) -> PartialBijection {
    let mut img = support.to_vec();
    img.shuffle(rng);
    from_images(n, &support.iter().copied().zip(img).collect::<Vec<_>>())
}

/// Splits `0..n` into consecutive blocks of random sizes.
fn random_blocks<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut x = 0;
    while x < n {
        let k = rng.gen_range(1..=(n - x).min(3));
        out.push((x..x + k).collect());
        x += k;
    }
    out
}

/// Generators drawn from one family. Clifford generators permute a random
/// union of blocks, block by block. Strict generators are, on each of one or
/// two clusters, either undefined or a bijection from one block of the
/// cluster onto another.
pub fn random_gens<R: Rng>(rng: &mut R, family: Family, n: usize, count: usize) -> Vec<PartialBijection> {
    match family {
        Family::Semilattice => (0..count).map(|_| random_partial_identity(rng, n, 0.6)).collect(),
        Family::Group => {
            let support: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.8)).collect();
            (0..count).map(|_| random_perm_on(rng, n, &support)).collect()
        }
        Family::Clifford => {
            let blocks = random_blocks(rng, n);
            (0..count)
                .map(|_| {
                    let mut map = Vec::new();
                    for b in &blocks {
                        if rng.gen_bool(0.6) {
                            let mut img = b.clone();
                            img.shuffle(rng);
                            map.extend(b.iter().copied().zip(img));
                        }
                    }
                    from_images(n, &map)
                })
                .collect()
        }
        Family::Strict => {
            let clusters = if n >= 4 && rng.gen_bool(0.5) { 2 } else { 1 };
            let cut = if clusters == 2 { rng.gen_range(2..=n - 2) } else { n };
            let mut shapes = Vec::new();
            for (lo, hi) in [(0, cut), (cut, n)] {
                if hi <= lo {
                    continue;
                }
                let len = hi - lo;
                let size = *[1, 2, 3].iter().filter(|&&m| m <= len).collect::<Vec<_>>().choose(rng).unwrap();
                let blocks: Vec<Vec<usize>> = (0..len / size).map(|b| (lo + b * size..lo + (b + 1) * size).collect()).collect();
                shapes.push(blocks);
            }
            (0..count)
                .map(|_| {
                    let mut map = Vec::new();
                    for blocks in &shapes {
                        if rng.gen_bool(0.2) {
                            continue;
                        }
                        let from = blocks.choose(rng).unwrap();
                        let to = blocks.choose(rng).unwrap();
                        let mut img = to.clone();
                        img.shuffle(rng);
                        map.extend(from.iter().copied().zip(img));
                    }
                    from_images(n, &map)
                })
                .collect()
        }
        Family::General => (0..count).map(|_| random_pb(rng, n, 0.7)).collect(),
    }
}

pub struct Sample {
    pub family: Family,
    pub system: PbSystem,
    pub closure: Closure<PartialBijection>,
}

/// Draws systems of the given family until one closes within `max_size`.
pub fn sample<R: Rng>(rng: &mut R, family: Family, degree: std::ops::RangeInclusive<usize>, gens: std::ops::RangeInclusive<usize>, max_size: usize) -> Sample {
    loop {
        let n = rng.gen_range(degree.clone());
        let k = rng.gen_range(gens.clone());
        let g = random_gens(rng, family, n, k);
        let system = PbSystem::from_gens(n, g).expect("same degree");
        if let Ok(closure) = close(&system, Caps::elements(max_size)) {
            return Sample { family, system, closure };
        }
    }
}

/// A target that is a closure element half of the time.
pub fn target<R: Rng>(rng: &mut R, s: &Sample) -> PartialBijection {
    if rng.gen_bool(0.5) {
        s.closure.elements().choose(rng).unwrap().clone()
    } else {
        random_pb(rng, s.system.degree(), 0.6)
    }
}

/// Every partial bijection of `0..n`.
pub fn all_partial_bijections(n: usize) -> Vec<PartialBijection> {
    fn go(n: usize, x: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<PartialBijection>) {
        if x == n {
            out.push(PartialBijection::new(cur).unwrap());
            return;
        }
        cur.push(None);
        go(n, x + 1, used, cur, out);
        cur.pop();
        for y in 0..n {
            if !used[y] {
                used[y] = true;
                cur.push(Some(y));
                go(n, x + 1, used, cur, out);
                cur.pop();
                used[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

/// Connectivity by breadth-first search, independent of the library's
/// union-find.
pub fn bfs_connected(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> bool {
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([s]);
    seen[s] = true;
    while let Some(x) = queue.pop_front() {
        for &(a, b) in edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !seen[q] {
                    seen[q] = true;
                    queue.push_back(q);
                }
            }
        }
    }
    seen[t]
}
