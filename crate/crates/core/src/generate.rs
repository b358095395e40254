//! Seeded synthetic inputs: terrains, random closed surfaces and random
//! flag complexes.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{build_complex, lower_star_extend, FilteredComplex};
use crate::io::Mesh;

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n × n` grid terrain, two triangles per cell, heights in `[0, 10]` from
/// seeded fractal value noise. Octave `k` has amplitude `(roughness / 2)^k`.
pub fn terrain_mesh(n: usize, seed: u64, roughness: f64) -> Mesh {
    assert!(n >= 2, "terrain needs at least a 2 × 2 grid");
    let mut rng = seeded_rng(seed);
    let octaves = (usize::BITS - (n - 1).leading_zeros()).max(1) as usize;
    let mut z = vec![0.0; n * n];
    for k in 0..octaves {
        let res = 1usize << (k + 1);
        let lattice: Vec<f64> = (0..(res + 1) * (res + 1)).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let amp = (roughness / 2.0).powi(k as i32);
        for i in 0..n {
            for j in 0..n {
                let x = i as f64 / (n - 1) as f64 * res as f64;
                let y = j as f64 / (n - 1) as f64 * res as f64;
                z[i * n + j] += amp * value_noise(&lattice, res, x, y);
            }
        }
    }
    let (lo, hi) = z.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let scale = if hi > lo { 10.0 / (hi - lo) } else { 0.0 };
    let positions = (0..n * n)
        .map(|idx| [(idx / n) as f64, (idx % n) as f64, (z[idx] - lo) * scale])
        .collect();
    let mut triangles = Vec::with_capacity(2 * (n - 1) * (n - 1));
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let (a, b, c, d) = (i * n + j, i * n + j + 1, (i + 1) * n + j, (i + 1) * n + j + 1);
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    Mesh { positions, triangles }
}

fn value_noise(lattice: &[f64], res: usize, x: f64, y: f64) -> f64 {
    let (x0, y0) = ((x.floor() as usize).min(res - 1), (y.floor() as usize).min(res - 1));
    let smooth = |t: f64| t * t * (3.0 - 2.0 * t);
    let (tx, ty) = (smooth(x - x0 as f64), smooth(y - y0 as f64));
    let at = |i: usize, j: usize| lattice[i * (res + 1) + j];
    let top = at(x0, y0) * (1.0 - ty) + at(x0, y0 + 1) * ty;
    let bottom = at(x0 + 1, y0) * (1.0 - ty) + at(x0 + 1, y0 + 1) * ty;
    top * (1.0 - tx) + bottom * tx
}

/// Lower-star complex of [`terrain_mesh`] with z heights.
pub fn generate_terrain(n: usize, seed: u64, roughness: f64) -> FilteredComplex {
    let mesh = terrain_mesh(n, seed, roughness);
    mesh.complex(&mesh.z_heights()).expect("grid triangulation is a valid complex")
}

/// Closure of a list of triangles, as sorted vertex lists.
pub fn triangle_skeleton(triangles: &[[usize; 3]]) -> Vec<Vec<usize>> {
    let mut set: HashSet<Vec<usize>> = HashSet::new();
    for t in triangles {
        let mut t = *t;
        t.sort_unstable();
        for mask in 1u32..8 {
            set.insert((0..3).filter(|i| mask & (1 << i) != 0).map(|i| t[i]).collect());
        }
    }
    let mut out: Vec<Vec<usize>> = set.into_iter().collect();
    out.sort();
    out
}

/// `n` distinct-with-probability-one heights drawn uniformly from `[0, 10)`.
pub fn random_heights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..10.0)).collect()
}

/// Closed surface given by its triangles, with edge-to-triangle incidence
/// kept up to date under edge flips.
struct SurfaceBuilder {
    triangles: Vec<[usize; 3]>,
    edge_faces: HashMap<(usize, usize), Vec<usize>>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl SurfaceBuilder {
    fn new(triangles: Vec<[usize; 3]>) -> Self {
        let mut s = Self {
            triangles: Vec::new(),
            edge_faces: HashMap::new(),
        };
        for t in triangles {
            s.push(t);
        }
        s
    }

    fn push(&mut self, t: [usize; 3]) {
        let i = self.triangles.len();
        self.triangles.push(t);
        self.attach(i);
    }

    fn attach(&mut self, i: usize) {
        let t = self.triangles[i];
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            self.edge_faces.entry(key(a, b)).or_default().push(i);
        }
    }

    fn detach(&mut self, i: usize) {
        let t = self.triangles[i];
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            let faces = self.edge_faces.get_mut(&key(a, b)).unwrap();
            faces.retain(|&f| f != i);
            if faces.is_empty() {
                self.edge_faces.remove(&key(a, b));
            }
        }
    }

    /// Replaces triangle `i` by a cone from a new vertex `x` over its edges.
    fn subdivide(&mut self, i: usize, x: usize) {
        let [a, b, c] = self.triangles[i];
        self.detach(i);
        self.triangles[i] = [a, b, x];
        self.attach(i);
        self.push([b, c, x]);
        self.push([a, c, x]);
    }

    /// Flips edge `{a, b}` of triangle `i` unless the opposite edge exists.
    fn try_flip<R: Rng + ?Sized>(&mut self, rng: &mut R, i: usize) -> bool {
        let t = self.triangles[i];
        let side = rng.gen_range(0..3);
        let (a, b, c) = (t[side], t[(side + 1) % 3], t[(side + 2) % 3]);
        let faces = &self.edge_faces[&key(a, b)];
        let Some(&j) = faces.iter().find(|&&f| f != i) else { return false };
        let d = *self.triangles[j].iter().find(|&&x| x != a && x != b).unwrap();
        if c == d || self.edge_faces.contains_key(&key(c, d)) {
            return false;
        }
        self.detach(i);
        self.detach(j);
        self.triangles[i] = [a, c, d];
        self.triangles[j] = [b, c, d];
        self.attach(i);
        self.attach(j);
        true
    }

    fn shuffle_flips<R: Rng + ?Sized>(&mut self, rng: &mut R, flips: usize) {
        for _ in 0..flips {
            let i = rng.gen_range(0..self.triangles.len());
            self.try_flip(rng, i);
        }
    }
}

/// Triangles of a random sphere with `n ≥ 4` vertices: a tetrahedron
/// boundary refined by random stellar subdivisions, then randomized by flips.
pub fn random_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize, flips: usize) -> Vec<[usize; 3]> {
    assert!(n >= 4, "a sphere needs at least 4 vertices");
    let mut s = SurfaceBuilder::new(vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
    for x in 4..n {
        let i = rng.gen_range(0..s.triangles.len());
        s.subdivide(i, x);
    }
    s.shuffle_flips(rng, flips);
    s.triangles
}

/// Triangles of a random torus: an `n × m` periodic grid (`n, m ≥ 3`)
/// randomized by flips.
pub fn random_torus<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, flips: usize) -> Vec<[usize; 3]> {
    assert!(n >= 3 && m >= 3, "torus grid needs at least 3 × 3 vertices");
    let idx = |i: usize, j: usize| (i % n) * m + (j % m);
    let mut triangles = Vec::with_capacity(2 * n * m);
    for i in 0..n {
        for j in 0..m {
            let (a, b, c, d) = (idx(i, j), idx(i, j + 1), idx(i + 1, j), idx(i + 1, j + 1));
            triangles.push([a, b, d]);
            triangles.push([a, d, c]);
        }
    }
    let mut s = SurfaceBuilder::new(triangles);
    s.shuffle_flips(rng, flips);
    s.triangles
}

/// A random sphere or torus with at most `max_simplices` simplices and
/// random lower-star heights.
pub fn random_closed_surface<R: Rng + ?Sized>(rng: &mut R, max_simplices: usize) -> FilteredComplex {
    // a triangulated surface with V vertices has 6V - 5χ simplices
    let triangles = if rng.gen_bool(0.5) {
        let max_v = ((max_simplices + 10) / 6).max(4);
        let n = rng.gen_range(4..=max_v);
        random_sphere(rng, n, 3 * n)
    } else {
        let max_v = (max_simplices / 6).max(9);
        let n = rng.gen_range(3..=(max_v / 3).max(3));
        let m = rng.gen_range(3..=(max_v / n).max(3));
        random_torus(rng, n, m, 3 * n * m)
    };
    let n_vertices = triangles.iter().flatten().max().map_or(0, |&x| x + 1);
    let heights = random_heights(rng, n_vertices);
    lower_star_extend(&heights, triangle_skeleton(&triangles)).expect("surface triangulation is a valid complex")
}

/// Random clique complex up to dimension `max_dim` (at most 3) on `n`
/// vertices, edges kept with probability `edge_prob`. Heights are a general
/// monotone function: each simplex sits at the highest of its facets plus a
/// random increment that is zero about a third of the time.
#[allow(clippy::needless_range_loop)]
pub fn random_flag_complex<R: Rng + ?Sized>(rng: &mut R, n: usize, edge_prob: f64, max_dim: usize) -> FilteredComplex {
    let mut adjacent = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(edge_prob) {
                adjacent[a][b] = true;
                adjacent[b][a] = true;
            }
        }
    }
    let mut layers: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for d in 1..=max_dim.min(3) {
        let next: Vec<Vec<usize>> = layers[d - 1]
            .iter()
            .flat_map(|s| {
                let last = *s.last().unwrap();
                (last + 1..n)
                    .filter(|&x| s.iter().all(|&y| adjacent[x][y]))
                    .map(|x| {
                        let mut t = s.clone();
                        t.push(x);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let mut height: HashMap<Vec<usize>, f64> = HashMap::new();
    for (d, layer) in layers.iter().enumerate() {
        for s in layer {
            let h = if d == 0 {
                rng.gen_range(0.0..10.0)
            } else {
                let top = (0..s.len())
                    .map(|skip| {
                        let f: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                        height[&f]
                    })
                    .fold(f64::NEG_INFINITY, f64::max);
                if rng.gen_bool(1.0 / 3.0) {
                    top
                } else {
                    top + rng.gen_range(0.0..2.0)
                }
            };
            height.insert(s.clone(), h);
        }
    }
    let mut list: Vec<(Vec<usize>, f64)> = height.into_iter().collect();
    list.shuffle(rng);
    build_complex(list).expect("clique complex with monotone heights is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::verify_closed_2manifold;

    #[test]
    fn smallest_terrain() {
        let k = generate_terrain(2, 0, 1.0);
        assert_eq!((k.count_of_dim(0), k.count_of_dim(1), k.count_of_dim(2)), (4, 5, 2));
    }

    #[test]
    fn terrain_is_deterministic_disc() {
        let a = terrain_mesh(20, 7, 1.0);
        assert_eq!(a, terrain_mesh(20, 7, 1.0));
        assert_ne!(a, terrain_mesh(20, 8, 1.0));
        let k = a.complex(&a.z_heights()).unwrap();
        assert_eq!(k.euler_characteristic(), 1);
        let (lo, hi) = a
            .z_heights()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(x, y), &v| (x.min(v), y.max(v)));
        assert_eq!((lo, hi), (0.0, 10.0));
    }

    #[test]
    fn random_surfaces_are_closed_manifolds() {
        let mut rng = seeded_rng(3);
        for _ in 0..40 {
            let k = random_closed_surface(&mut rng, 500);
            assert!(k.len() <= 500, "{} simplices", k.len());
            assert!(verify_closed_2manifold(&k));
            let chi = k.euler_characteristic();
            assert!(chi == 2 || chi == 0, "euler characteristic {chi}");
        }
    }

    #[test]
    fn sphere_and_torus_counts() {
        let mut rng = seeded_rng(1);
        let s = random_sphere(&mut rng, 30, 100);
        assert_eq!(s.len(), 2 * 30 - 4);
        let t = random_torus(&mut rng, 4, 5, 100);
        assert_eq!(t.len(), 40);
        let k = lower_star_extend(&random_heights(&mut rng, 20), triangle_skeleton(&t)).unwrap();
        assert!(verify_closed_2manifold(&k));
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn flag_complexes_are_valid() {
        let mut rng = seeded_rng(5);
        for _ in 0..20 {
            let k = random_flag_complex(&mut rng, 9, 0.5, 3);
            k.check_invariants().unwrap();
            assert!(k.dim().unwrap() <= 3);
        }
    }
}
