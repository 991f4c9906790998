//! Polynomial roots by Aberth–Ehrlich simultaneous iteration, plus grouping
//! of numerically repeated roots into validated clusters.

use std::f64::consts::PI;

use super::poly::Poly;
use crate::Cplx;

const MAX_ITER: usize = 1000;

/// All roots of `p` with multiplicity (empty for constants and zero).
pub fn roots(p: &Poly) -> Vec<Cplx> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let coeffs = p.coeffs();
    // Exact zero roots first.
    let zeros = coeffs.iter().take_while(|c| **c == Cplx::new(0.0, 0.0)).count();
    let mut out = vec![Cplx::new(0.0, 0.0); zeros];
    let lead = coeffs[deg];
    let monic: Vec<Cplx> = coeffs[zeros..].iter().map(|c| c / lead).collect();
    let n = monic.len() - 1;
    match n {
        0 => {}
        1 => out.push(-monic[0]),
        _ => out.extend(aberth(&monic)),
    }
    out
}

fn aberth(monic: &[Cplx]) -> Vec<Cplx> {
    let n = monic.len() - 1;
    let p = Poly::new(monic.to_vec());
    let dp = p.derivative();

    // Start on a circle whose radius is the geometric mean of the root moduli,
    // clamped by the Fujiwara-type bound.
    let bound = (0..n)
        .map(|j| monic[j].norm().powf(1.0 / (n - j) as f64))
        .fold(0.0, f64::max);
    let geo = monic[0].norm().powf(1.0 / n as f64);
    let radius = if geo > 0.0 { geo.min(bound) } else { bound.max(1e-3) };
    let mut z: Vec<Cplx> = (0..n)
        .map(|i| Cplx::from_polar(radius, 2.0 * PI * i as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITER {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let pv = p.eval(zi);
            if pv.norm() <= 4.0 * f64::EPSILON * p.eval_abs(zi) {
                done[i] = true;
                continue;
            }
            let dv = dp.eval(zi);
            let ratio = pv / dv;
            let sum: Cplx = z
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, zj)| {
                    let d = zi - zj;
                    if d.norm() == 0.0 {
                        Cplx::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Cplx::new(1.0, 0.0) - ratio * sum);
            if !step.is_finite() {
                // derivative vanished: nudge off the critical point
                z[i] = zi + Cplx::new(1e-8 * (1.0 + zi.norm()), 1e-8);
                continue;
            }
            z[i] = zi - step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
    }
    z
}

/// A group of numerically coincident roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Cplx,
    pub multiplicity: usize,
}

/// Groups the roots of `p` into clusters whose centroids are verified to be
/// roots of the stated multiplicity (leading Taylor coefficients below
/// `rel` times their natural scale).
pub fn clusters(p: &Poly, rel: f64) -> Vec<RootCluster> {
    let r = roots(p);
    let mut out = Vec::new();
    split(p, &r, 0, rel, &mut out);
    out
}

const LEVELS: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];

fn split(p: &Poly, pts: &[Cplx], level: usize, rel: f64, out: &mut Vec<RootCluster>) {
    if pts.is_empty() {
        return;
    }
    if level >= LEVELS.len() {
        out.extend(pts.iter().map(|&center| RootCluster {
            center,
            multiplicity: 1,
        }));
        return;
    }
    for group in single_linkage(pts, LEVELS[level]) {
        if group.len() == 1 {
            out.push(RootCluster {
                center: group[0],
                multiplicity: 1,
            });
            continue;
        }
        let m = group.len();
        let center = polish(p, group.iter().sum::<Cplx>() / m as f64, m);
        if p.multiplicity_at(center, rel) >= m {
            out.push(RootCluster {
                center,
                multiplicity: m,
            });
        } else {
            split(p, &group, level + 1, rel, out);
        }
    }
}

/// Newton steps on `p^(m-1)`, which has a simple root at an `m`-fold root
/// of `p`.
fn polish(p: &Poly, start: Cplx, m: usize) -> Cplx {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let dd = d.derivative();
    let mut z = start;
    for _ in 0..8 {
        let step = d.eval(z) / dd.eval(z);
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm().max(1.0) {
            break;
        }
    }
    if p.eval(z).norm() <= p.eval(start).norm() {
        z
    } else {
        start
    }
}

fn single_linkage(pts: &[Cplx], rel: f64) -> Vec<Vec<Cplx>> {
    let n = pts.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while label[i] != i {
            label[i] = label[label[i]];
            i = label[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let thr = rel * pts[i].norm().max(pts[j].norm()).max(1.0);
            if (pts[i] - pts[j]).norm() <= thr {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Cplx>)> = Vec::new();
    for (i, &p) in pts.iter().enumerate().take(n) {
        let root = find(&mut label, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, g)) => g.push(p),
            None => groups.push((root, vec![p])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}
