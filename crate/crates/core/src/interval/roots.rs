use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

use super::boxes::CBox;
use super::dyadic::Dyadic;
use super::real::Interval;
use crate::exact::{Rat, RatPoly};
use crate::{Error, Result};

/// A certified root: the disk of `radius` around the center contains
/// exactly one root of the polynomial, and that root is real iff `is_real`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub re: Dyadic,
    pub im: Dyadic,
    pub radius: Dyadic,
    pub is_real: bool,
}

impl Root {
    /// Box enclosure; real roots get an exact zero imaginary part.
    pub fn enclosure(&self) -> CBox {
        if self.is_real {
            CBox::real(Interval::new(
                &self.re - &self.radius,
                &self.re + &self.radius,
            ))
        } else {
            CBox::around(&self.re, &self.im, &self.radius)
        }
    }

    /// Does the disk of this root meet the given box?
    pub fn meets(&self, b: &CBox) -> bool {
        self.enclosure().intersects(b)
    }
}

/// Isolated roots of a squarefree polynomial in canonical order: real roots
/// ascending, then conjugate pairs (upper member first) ordered by the
/// upper member's center.
#[derive(Clone, Debug)]
pub struct RootSet {
    poly: RatPoly,
    roots: Vec<Root>,
    bits: u32,
    work: u32,
}

impl RootSet {
    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Radii are at most 2^-bits.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Indices of the real roots and of the upper member of each pair.
    pub fn places(&self) -> Vec<usize> {
        self.roots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_real || r.im.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    /// Same roots, same order, radii at most 2^-bits.
    pub fn refine(&self, bits: u32, max_bits: u32) -> Result<RootSet> {
        if bits <= self.bits {
            return Ok(self.clone());
        }
        if self.poly.deg() == 1 {
            return isolate_roots(&self.poly, bits, max_bits);
        }
        let start: Vec<Pt> = self
            .roots
            .iter()
            .map(|r| Pt {
                re: r.re.clone(),
                im: r.im.clone(),
            })
            .collect();
        let (roots, work) = converge(&self.poly, start, bits, self.work.max(bits + 32), max_bits)?;
        for (old, new) in self.roots.iter().zip(&roots) {
            let d = dist_hi(old, new);
            if &d + &new.radius > old.radius || old.is_real != new.is_real {
                return Err(Error::Certification(
                    "root refinement lost track of a root".into(),
                ));
            }
        }
        Ok(RootSet {
            poly: self.poly.clone(),
            roots,
            bits,
            work,
        })
    }
}

fn dist_hi(a: &Root, b: &Root) -> Dyadic {
    let dr = (&a.re - &b.re).abs();
    let di = (&a.im - &b.im).abs();
    &dr + &di
}

/// Isolates every complex root of a squarefree rational polynomial to
/// radius 2^-bits, escalating working precision up to `max_bits`.
pub fn isolate_roots(f: &RatPoly, bits: u32, max_bits: u32) -> Result<RootSet> {
    if f.degree() < 1 {
        return Ok(RootSet {
            poly: f.clone(),
            roots: Vec::new(),
            bits,
            work: 0,
        });
    }
    if !f.is_squarefree() {
        return Err(Error::InvalidArgument(
            "root isolation needs a squarefree polynomial".into(),
        ));
    }
    let f = f.monic();
    let n = f.deg();
    if n == 1 {
        let r = -f.coeff(0);
        let prec = bits + 8;
        let lo = Dyadic::from_rat(&r, prec, false);
        let hi = Dyadic::from_rat(&r, prec, true);
        let root = Root {
            radius: &hi - &lo,
            re: lo,
            im: Dyadic::zero(),
            is_real: true,
        };
        return Ok(RootSet {
            poly: f,
            roots: vec![root],
            bits,
            work: prec,
        });
    }
    // Initial points on a circle of Cauchy radius, rotated by (3+4i)/5.
    let bound =
        f.coeffs()[..n].iter().map(|c| c.abs()).max().unwrap() + Rat::from_integer(1.into());
    let r = Dyadic::from_rat(&bound, 64, true);
    let u = Pt {
        re: Dyadic::from_rat(&Rat::new(3.into(), 5.into()), 64, false),
        im: Dyadic::from_rat(&Rat::new(4.into(), 5.into()), 64, false),
    };
    let mut start = Vec::with_capacity(n);
    let mut z = Pt {
        re: r.clone(),
        im: Dyadic::zero(),
    };
    for _ in 0..n {
        z = z.mul(&u, 64);
        start.push(z.clone());
    }
    let (mut roots, work) = converge(&f, start, bits, 64.max(bits / 2), max_bits)?;
    roots.sort_by(canonical_cmp);
    // Put each lower conjugate right after its upper partner.
    let reals: Vec<Root> = roots.iter().filter(|r| r.is_real).cloned().collect();
    let uppers: Vec<Root> = roots
        .iter()
        .filter(|r| !r.is_real && r.im.is_positive())
        .cloned()
        .collect();
    let mut out = reals;
    for up in uppers {
        let low = Root {
            im: -&up.im,
            ..up.clone()
        };
        out.push(up);
        out.push(low);
    }
    Ok(RootSet {
        poly: f,
        roots: out,
        bits,
        work,
    })
}

fn canonical_cmp(a: &Root, b: &Root) -> Ordering {
    match (a.is_real, b.is_real) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im)),
    }
}

#[derive(Clone, Debug)]
struct Pt {
    re: Dyadic,
    im: Dyadic,
}

impl Pt {
    fn add(&self, o: &Pt) -> Pt {
        Pt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn sub(&self, o: &Pt) -> Pt {
        Pt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    fn mul(&self, o: &Pt, p: u32) -> Pt {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Pt {
            re: re.round(p, false),
            im: im.round(p, false),
        }
    }
    fn norm_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
    fn div(&self, o: &Pt, p: u32) -> Option<Pt> {
        let n = o.norm_sq().round(p + 4, false);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(
            &Pt {
                re: o.re.clone(),
                im: -&o.im,
            },
            p + 4,
        );
        Some(Pt {
            re: Dyadic::div(&num.re, &n, p, false),
            im: Dyadic::div(&num.im, &n, p, false),
        })
    }
    fn magnitude_log2(&self) -> i64 {
        let a = core::cmp::max(self.re.abs(), self.im.abs());
        if a.is_zero() {
            i64::MIN / 2
        } else {
            a.ilog2()
        }
    }
}

/// f and f' at z (integer coefficients, rounded Horner).
fn eval_pair(c: &[Dyadic], z: &Pt, p: u32) -> (Pt, Pt) {
    let mut f = Pt {
        re: Dyadic::zero(),
        im: Dyadic::zero(),
    };
    let mut d = f.clone();
    for a in c.iter().rev() {
        d = d.mul(z, p).add(&f);
        f = f.mul(z, p).add(&Pt {
            re: a.clone(),
            im: Dyadic::zero(),
        });
    }
    (f, d)
}

/// Aberth iteration with certification; returns certified roots in the
/// iteration's order together with the final working precision.
fn converge(
    f: &RatPoly,
    mut z: Vec<Pt>,
    bits: u32,
    start_prec: u32,
    max_bits: u32,
) -> Result<(Vec<Root>, u32)> {
    let n = z.len();
    let (_, ints) = f.primitive_part();
    let coeffs: Vec<Dyadic> = ints
        .iter()
        .map(|c| Dyadic::from_bigint(c.clone()))
        .collect();
    let mut p = start_prec.max(64);
    let mut achieved = i64::MIN;
    loop {
        let cap = 60 + 12 * n;
        for _ in 0..cap {
            let mut moved = i64::MIN;
            for i in 0..n {
                let (fv, dv) = eval_pair(&coeffs, &z[i], p);
                if fv.re.is_zero() && fv.im.is_zero() {
                    continue;
                }
                let ratio = match fv.div(&dv, p) {
                    Some(r) => r,
                    None => {
                        // Nudge off a critical point.
                        z[i].re = &z[i].re + &Dyadic::pow2(-(p as i64) / 4);
                        continue;
                    }
                };
                let mut s = Pt {
                    re: Dyadic::zero(),
                    im: Dyadic::zero(),
                };
                for j in 0..n {
                    if j != i {
                        if let Some(q) = (Pt {
                            re: Dyadic::from_i64(1),
                            im: Dyadic::zero(),
                        })
                        .div(&z[i].sub(&z[j]), p)
                        {
                            s = s.add(&q);
                        }
                    }
                }
                let den = Pt {
                    re: Dyadic::from_i64(1),
                    im: Dyadic::zero(),
                }
                .sub(&ratio.mul(&s, p));
                let w = ratio.div(&den, p).unwrap_or(ratio);
                let rel = w.magnitude_log2() - z[i].magnitude_log2().max(0);
                moved = moved.max(rel);
                z[i] = z[i].sub(&w);
                z[i].re = z[i].re.round(p, false);
                z[i].im = z[i].im.round(p, false);
            }
            if moved < -(p as i64) + 12 {
                break;
            }
        }
        snap_conjugates(&mut z, p);
        if let Some(roots) = certify(f, &z, p + 32) {
            let worst = roots
                .iter()
                .map(|r| {
                    if r.radius.is_zero() {
                        i64::MIN
                    } else {
                        r.radius.ilog2()
                    }
                })
                .max()
                .unwrap();
            achieved = achieved.max(worst.saturating_neg().saturating_sub(1));
            if worst < -(bits as i64) {
                return Ok((roots, p));
            }
        }
        if p >= max_bits + 64 {
            return Err(Error::Precision {
                achieved_bits: achieved,
            });
        }
        p = (2 * p).max(bits + 32).min(max_bits + 64);
    }
}

fn snap_conjugates(z: &mut [Pt], p: u32) {
    let half = -(p as i64) / 2;
    for w in z.iter_mut() {
        if w.im.is_zero() {
            continue;
        }
        let scale = w.magnitude_log2().max(0);
        if w.im.abs().ilog2() < half + scale {
            w.im = Dyadic::zero();
        }
    }
    let up: Vec<usize> = (0..z.len()).filter(|&i| z[i].im.is_positive()).collect();
    let mut low: Vec<usize> = (0..z.len()).filter(|&i| z[i].im.is_negative()).collect();
    if up.len() != low.len() {
        return;
    }
    for &i in &up {
        let target = Pt {
            re: z[i].re.clone(),
            im: -&z[i].im,
        };
        let (k, _) = low
            .iter()
            .enumerate()
            .min_by(|a, b| {
                target
                    .sub(&z[*a.1])
                    .norm_sq()
                    .cmp(&target.sub(&z[*b.1]).norm_sq())
            })
            .unwrap();
        let j = low.remove(k);
        z[j] = target;
    }
}

/// Inclusion disks of radius n·|W_i|; success iff pairwise disjoint and
/// every non-real center's disk misses the real axis.
fn certify(f: &RatPoly, z: &[Pt], p: u32) -> Option<Vec<Root>> {
    let n = z.len();
    let boxes: Vec<CBox> = z
        .iter()
        .map(|w| CBox::around(&w.re, &w.im, &Dyadic::zero()))
        .collect();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let fv = CBox::eval_poly(f, &boxes[i], p);
        if fv.re.is_exact_zero() && fv.im.is_exact_zero() {
            radii.push(Dyadic::zero());
            continue;
        }
        let mut den = CBox::real(Interval::one());
        for j in 0..n {
            if j != i {
                den = den.mul(&boxes[i].sub(&boxes[j]), p);
            }
        }
        let w = fv.div(&den, p).ok()?;
        let mag = w.norm_sq(p).sqrt(p).ok()?;
        radii.push((&mag.hi().clone() * &Dyadic::from_bigint(BigInt::from(n))).round(32, true));
    }
    for i in 0..n {
        if !z[i].im.is_zero() && radii[i] >= z[i].im.abs() {
            return None;
        }
        for j in i + 1..n {
            let d = boxes[i].sub(&boxes[j]).norm_sq(p);
            let s = &radii[i] + &radii[j];
            if d.lo() <= &(&s * &s) {
                return None;
            }
        }
    }
    Some(
        z.iter()
            .zip(radii)
            .map(|(w, r)| Root {
                re: w.re.clone(),
                im: w.im.clone(),
                radius: r,
                is_real: w.im.is_zero(),
            })
            .collect(),
    )
}
