//! Maclaurin series for the Airy functions, summed in double-double
//! arithmetic so that the cancellation between the two power series (terms
//! reach ~1e8 at |x| = 9) costs nothing visible in the final f64.

#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    const fn new(hi: f64, lo: f64) -> Self {
        Dd { hi, lo }
    }

    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi));
        Dd { hi, lo }
    }

    fn div_f(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let (p, pe) = two_prod(q1, b);
        let r = ((self.hi - p) - pe + self.lo) / b;
        let (hi, lo) = quick_two_sum(q1, r);
        Dd { hi, lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// Ai(0) = 3^{-2/3}/Γ(2/3)
const AI0: Dd = Dd::new(0.3550280538878172, 2.05233632436212e-17);
/// −Ai′(0) = 3^{-1/3}/Γ(1/3)
const MAIP0: Dd = Dd::new(0.2588194037928068, -2.522243111610832e-17);
const SQRT3: Dd = Dd::new(1.7320508075688772, 1.0035084221806903e-16);

const REL_STOP: f64 = 1e-33;
const ABS_STOP: f64 = 1e-40;

fn converged(term: Dd, sum: Dd) -> bool {
    let t = term.hi.abs();
    t <= REL_STOP * sum.hi.abs() || t <= ABS_STOP
}

/// Sums `Σ t_k` with `t_0 = first`, `t_k = t_{k−1}·x³/den(k)`.
fn hyper_sum(first: Dd, x3: Dd, den: impl Fn(f64) -> f64) -> Dd {
    let mut term = first;
    let mut sum = first;
    for k in 1..400 {
        term = term.mul(x3).div_f(den(k as f64));
        sum = sum.add(term);
        if converged(term, sum) {
            break;
        }
    }
    sum
}

/// `(Ai, Ai′, Bi, Bi′)` from the power series; intended for |x| ≲ 9.
pub(crate) fn airy_series(x: f64) -> (f64, f64, f64, f64) {
    let xd = Dd::from(x);
    let x3 = xd.mul(xd).mul(xd);

    let f = hyper_sum(Dd::from(1.0), x3, |k| (3.0 * k - 1.0) * (3.0 * k));
    let g = hyper_sum(xd, x3, |k| (3.0 * k) * (3.0 * k + 1.0));
    let fp = if x == 0.0 {
        Dd::ZERO
    } else {
        // k-th derivative term, starting at x²/2.
        let first = xd.mul(xd).div_f(2.0);
        hyper_sum(first, x3, |k| (3.0 * k + 2.0) * (3.0 * k))
    };
    let gp = hyper_sum(Dd::from(1.0), x3, |k| (3.0 * k) * (3.0 * k - 2.0));

    let af = AI0.mul(f);
    let bg = MAIP0.mul(g);
    let afp = AI0.mul(fp);
    let bgp = MAIP0.mul(gp);

    let ai = af.add(bg.neg()).to_f64();
    let aip = afp.add(bgp.neg()).to_f64();
    let bi = SQRT3.mul(af.add(bg)).to_f64();
    let bip = SQRT3.mul(afp.add(bgp)).to_f64();
    (ai, aip, bi, bip)
}
