#![allow(dead_code)]

use knotforge::diagram::RawCrossing;
use knotforge::fourmanifold::{FoldKind, GenusValue, MapCatalog, StableMap, SurfaceComponent};
use knotforge::PDDiagram;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

/// Closure of a braid word on `strands` strands; generator `(i, +1)` puts
/// the strand from lower-left over.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> PDDiagram {
    let mut next = 1u32;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let bottom: Vec<u32> = (0..strands).map(|_| fresh()).collect();
    let mut cur = bottom.clone();
    let mut raw = Vec::new();
    for &(i, positive) in word {
        let (sw, se) = (cur[i], cur[i + 1]);
        let (nw, ne) = (fresh(), fresh());
        // counterclockwise: SW, SE, NE, NW
        raw.push(if positive {
            // "/" over: under-strand SE -> NW, over enters at SW (slot 3)
            RawCrossing {
                labels: [se, ne, nw, sw],
                over_forward: false,
            }
        } else {
            // "\" over: under-strand SW -> NE, over enters at SE (slot 1)
            RawCrossing {
                labels: [sw, se, ne, nw],
                over_forward: true,
            }
        });
        cur[i] = nw;
        cur[i + 1] = ne;
    }
    let joins: Vec<(u32, u32)> = cur.iter().zip(&bottom).map(|(&t, &b)| (t, b)).collect();
    PDDiagram::assemble(&raw, &joins, 0).expect("braid closures are valid").0
}

pub fn random_braid_closure(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> PDDiagram {
    let strands = rng.gen_range(1..=max_strands);
    let len = if strands == 1 { 0 } else { rng.gen_range(0..=max_len) };
    let word: Vec<(usize, bool)> = (0..len).map(|_| (rng.gen_range(0..strands - 1), rng.gen())).collect();
    braid_closure(strands, &word)
}

/// A random knot diagram: braid closures whose permutation is a single cycle.
pub fn random_knot(rng: &mut impl Rng, max_strands: usize, max_len: usize) -> PDDiagram {
    loop {
        let d = random_braid_closure(rng, max_strands, max_len);
        if d.component_count() == 1 {
            return d;
        }
    }
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `|Δ(−1)|` from the Fox coloring matrix: each crossing contributes
/// `2·over − under_in − under_out`.
pub fn knot_determinant(d: &PDDiagram) -> BigInt {
    let n = d.crossing_count();
    if n == 0 {
        return BigInt::from(1);
    }
    let max = 2 * n + 1;
    let mut parent: Vec<usize> = (0..max).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for c in d.crossings() {
        let (b, dd) = (find(&mut parent, c.labels[1] as usize), find(&mut parent, c.labels[3] as usize));
        parent[b] = dd;
    }
    let mut arc_index = std::collections::HashMap::new();
    for l in 1..max {
        let r = find(&mut parent, l);
        let len = arc_index.len();
        arc_index.entry(r).or_insert(len);
    }
    let arcs = arc_index.len();
    let mut m = vec![vec![BigInt::zero(); arcs]; n];
    for (i, c) in d.crossings().iter().enumerate() {
        let arc = |l: u32, p: &mut [usize]| arc_index[&find(p, l as usize)];
        let over = arc(c.labels[1], &mut parent);
        let a = arc(c.labels[0], &mut parent);
        let b = arc(c.labels[2], &mut parent);
        m[i][over] += 2;
        m[i][a] -= 1;
        m[i][b] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss_det(minor).abs()
}

/// Characteristic polynomial coefficients `c_0..c_n` of `det(xI − A)`
/// (`c_n = 1`), by Faddeev–LeVerrier.
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigRational> {
    let n = a.len();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let am: Vec<Vec<BigRational>> = a.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = q(1);
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &am[i][l] * &m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &am[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -tr / q(k as i64);
    }
    coeffs
}

fn sign_changes(c: &[BigRational]) -> i64 {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Signature by Descartes' rule on the characteristic polynomial, exact for
/// symmetric matrices since all eigenvalues are real.
pub fn signature_oracle(a: &[Vec<i64>]) -> i64 {
    let c = char_poly(a);
    let zeros = c.iter().take_while(|x| x.is_zero()).count();
    let c = &c[zeros..];
    let pos = sign_changes(c);
    let neg_coeffs: Vec<BigRational> =
        c.iter().enumerate().map(|(i, x)| if (i + zeros) % 2 == 1 { -x.clone() } else { x.clone() }).collect();
    let neg = sign_changes(&neg_coeffs);
    pos - neg
}

pub fn random_symmetric(rng: &mut impl Rng, max_rank: usize) -> Vec<Vec<i64>> {
    let n = rng.gen_range(0..=max_rank);
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-3..=3);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

/// `sg^k` straight from the definition: over every map, every `k`-subset
/// of admissible components, take the largest genus; minimize.
pub fn sg_brute(cat: &MapCatalog, k: usize) -> GenusValue {
    let mut best = GenusValue::Infinite;
    for m in &cat.maps {
        let comps: Vec<&SurfaceComponent> =
            m.singular_set.components.iter().filter(|c| cat.is_admissible(c)).collect();
        for mask in 0u32..(1 << comps.len()) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let max = (0..comps.len()).filter(|i| mask >> i & 1 == 1).map(|i| comps[i].genus).max().unwrap();
            best = best.min(GenusValue::Finite(max));
        }
    }
    best
}

pub fn random_catalog(rng: &mut impl Rng, max_components: usize) -> MapCatalog {
    let classes = [vec![1, 0], vec![-1, 0], vec![0, 1], vec![1, 1], vec![0, 0]];
    let maps = (0..rng.gen_range(0..=4))
        .map(|_| {
            StableMap::new(
                (0..rng.gen_range(0..=max_components))
                    .map(|_| {
                        let kind = if rng.gen() { FoldKind::Definite } else { FoldKind::Indefinite };
                        SurfaceComponent::new(rng.gen_range(0..6), classes[rng.gen_range(0..classes.len())].clone())
                            .with_kind(kind)
                    })
                    .collect(),
            )
        })
        .collect();
    let admissible: Vec<Vec<i64>> = classes.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
    let allowed = match rng.gen_range(0..3) {
        0 => vec![FoldKind::Definite],
        1 => vec![FoldKind::Indefinite],
        _ => vec![FoldKind::Definite, FoldKind::Indefinite],
    };
    MapCatalog::new(maps, admissible, allowed)
}
