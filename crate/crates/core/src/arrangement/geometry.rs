//! Exact intersections of rational lines and conics in the projective plane.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{det_z, kernel_basis, Int, MatQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    Line,
    Conic,
}

impl CurveKind {
    pub fn degree(self) -> u64 {
        match self {
            CurveKind::Line => 1,
            CurveKind::Conic => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Line => "line",
            CurveKind::Conic => "conic",
        }
    }

    pub fn from_degree(d: u64) -> Option<Self> {
        match d {
            1 => Some(CurveKind::Line),
            2 => Some(CurveKind::Conic),
            _ => None,
        }
    }
}

/// A line `a·x + b·y + c·z` or a conic with coefficients of
/// `xx, yy, zz, xy, xz, yz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    pub id: String,
    pub kind: CurveKind,
    pub coeffs: Vec<Rational>,
}

impl PlaneCurve {
    pub fn new(id: impl Into<String>, kind: CurveKind, coeffs: Vec<Rational>) -> Result<Self> {
        let id = id.into();
        let want = match kind {
            CurveKind::Line => 3,
            CurveKind::Conic => 6,
        };
        if coeffs.len() != want {
            return Err(Error::InvalidInput(format!(
                "curve `{id}` needs {want} coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput(format!("curve `{id}` has all coefficients zero")));
        }
        let c = Self { id, kind, coeffs };
        if kind == CurveKind::Conic && c.conic_det().is_zero() {
            return Err(Error::SingularConic(c.id));
        }
        Ok(c)
    }

    pub fn line(id: &str, c: [i64; 3]) -> Result<Self> {
        Self::new(id, CurveKind::Line, c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn conic(id: &str, c: [Rational; 6]) -> Result<Self> {
        Self::new(id, CurveKind::Conic, c.to_vec())
    }

    /// Symmetric matrix `M` with `f(v) = vᵀ M v`.
    pub fn matrix(&self) -> MatQ {
        let half = Rational::new(Int::from(1), Int::from(2));
        let c = &self.coeffs;
        match self.kind {
            CurveKind::Line => panic!("lines have no quadratic form"),
            CurveKind::Conic => {
                let (xy, xz, yz) = (&c[3] * &half, &c[4] * &half, &c[5] * &half);
                MatQ::from_vec(
                    3,
                    3,
                    vec![
                        c[0].clone(),
                        xy.clone(),
                        xz.clone(),
                        xy,
                        c[1].clone(),
                        yz.clone(),
                        xz,
                        yz,
                        c[2].clone(),
                    ],
                )
            }
        }
    }

    /// Determinant of the quadratic form, up to a positive factor.
    fn conic_det(&self) -> Int {
        let m = self.matrix();
        let lcm = m.to_rows().iter().flatten().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        det_z(&m.map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()))
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        let c = &self.coeffs;
        match self.kind {
            CurveKind::Line => &c[0] * &v[0] + &c[1] * &v[1] + &c[2] * &v[2],
            CurveKind::Conic => {
                &c[0] * &v[0] * &v[0]
                    + &c[1] * &v[1] * &v[1]
                    + &c[2] * &v[2] * &v[2]
                    + &c[3] * &v[0] * &v[1]
                    + &c[4] * &v[0] * &v[2]
                    + &c[5] * &v[1] * &v[2]
            }
        }
    }

    /// Same zero set: coefficient vectors proportional.
    pub fn same_curve(&self, other: &Self) -> bool {
        if self.kind != other.kind {
            return false;
        }
        let n = self.coeffs.len();
        (0..n).all(|i| (0..n).all(|j| &self.coeffs[i] * &other.coeffs[j] == &self.coeffs[j] * &other.coeffs[i]))
    }
}

/// Projective point scaled so that its first nonzero coordinate is 1.
pub fn normalize(v: &[Rational]) -> Vec<Rational> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("projective point is nonzero").clone();
    v.iter().map(|x| x / &lead).collect()
}

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Binary form `Σ c_i s^{n-i} t^i` of degree `n = c.len() - 1`.
#[derive(Clone, Debug, PartialEq)]
struct Form(Vec<Rational>);

impl Form {
    fn linear(a: Rational, b: Rational) -> Self {
        Form(vec![a, b])
    }

    fn constant(a: Rational) -> Self {
        Form(vec![a])
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree(), o.degree(), "forms of different degree");
        Form(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Form(out)
    }

    fn scale(&self, c: &Rational) -> Self {
        Form(self.0.iter().map(|a| a * c).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Evaluate a curve on a vector of forms of equal degree.
fn substitute(curve: &PlaneCurve, v: &[Form]) -> Form {
    let c = |k: usize| Form::constant(curve.coeffs[k].clone());
    match curve.kind {
        CurveKind::Line => c(0).mul(&v[0]).add(&c(1).mul(&v[1])).add(&c(2).mul(&v[2])),
        CurveKind::Conic => c(0)
            .mul(&v[0].mul(&v[0]))
            .add(&c(1).mul(&v[1].mul(&v[1])))
            .add(&c(2).mul(&v[2].mul(&v[2])))
            .add(&c(3).mul(&v[0].mul(&v[1])))
            .add(&c(4).mul(&v[0].mul(&v[2])))
            .add(&c(5).mul(&v[1].mul(&v[2]))),
    }
}

fn eval_form(f: &Form, s: &Rational, t: &Rational) -> Rational {
    let n = f.degree();
    let mut acc = Rational::zero();
    for (i, c) in f.0.iter().enumerate() {
        acc += c * num_traits::pow(s.clone(), n - i) * num_traits::pow(t.clone(), i);
    }
    acc
}

/// Largest integer whose absolute value the rational root search factors.
const ROOT_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &Int) -> Option<Vec<Int>> {
    let n = n.abs();
    if n > Int::from(ROOT_SEARCH_LIMIT) {
        return None;
    }
    let n: u64 = n.try_into().ok()?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(Int::from(d));
            if d * d != n {
                out.push(Int::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Polynomial `Σ c_i r^i` divided by `(r - root)`.
fn deflate(c: &[Rational], root: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (1..=n).rev() {
        carry = &c[i] + &carry * root;
        q[i - 1] = carry.clone();
    }
    q
}

fn poly_eval(c: &[Rational], r: &Rational) -> Rational {
    c.iter().rev().fold(Rational::zero(), |acc, a| acc * r + a)
}

fn exact_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

enum RootSearch<R = Rational> {
    Roots(Vec<(R, usize)>),
    /// A factor of positive degree has no rational root.
    Irrational,
    TooLarge,
}

/// Rational roots with multiplicity of a polynomial with nonzero leading
/// coefficient.
fn rational_roots(mut c: Vec<Rational>) -> RootSearch {
    let mut found: Vec<(Rational, usize)> = Vec::new();
    let push = |found: &mut Vec<(Rational, usize)>, r: Rational| {
        if let Some(e) = found.iter_mut().find(|(x, _)| *x == r) {
            e.1 += 1;
        } else {
            found.push((r, 1));
        }
    };
    loop {
        let n = c.len() - 1;
        if n == 0 {
            found.sort();
            return RootSearch::Roots(found);
        }
        if c[0].is_zero() {
            c.remove(0);
            push(&mut found, Rational::zero());
            continue;
        }
        if n == 1 {
            push(&mut found, -&c[0] / &c[1]);
            c = vec![c[1].clone()];
            continue;
        }
        if n == 2 {
            let disc = &c[1] * &c[1] - Rational::from_integer(4.into()) * &c[0] * &c[2];
            let Some(s) = exact_sqrt(&disc) else {
                return RootSearch::Irrational;
            };
            let two_a = Rational::from_integer(2.into()) * &c[2];
            push(&mut found, (-&c[1] + &s) / &two_a);
            push(&mut found, (-&c[1] - &s) / &two_a);
            c = vec![c[2].clone()];
            continue;
        }
        // clear denominators, then test ±p/q with p | a0, q | an
        let lcm = c.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<Int> = c.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(&ints[n])) else {
            return RootSearch::TooLarge;
        };
        let mut root = None;
        'search: for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let r = Rational::new(p * Int::from(sign), q.clone());
                    if poly_eval(&c, &r).is_zero() {
                        root = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match root {
            Some(r) => {
                c = deflate(&c, &r);
                push(&mut found, r);
            }
            None => return RootSearch::Irrational,
        }
    }
}

/// Roots of a nonzero binary form with multiplicities; `None` is the root
/// `(0:1)`, `Some(r)` is `(1:r)`.
fn form_roots(f: &Form) -> RootSearch<Option<Rational>> {
    let n = f.degree();
    let top = f.0.iter().rposition(|x| !x.is_zero()).expect("nonzero form");
    match rational_roots(f.0[..=top].to_vec()) {
        RootSearch::Roots(r) => {
            let mut out: Vec<(Option<Rational>, usize)> = r.into_iter().map(|(x, m)| (Some(x), m)).collect();
            if top < n {
                out.push((None, n - top));
            }
            RootSearch::Roots(out)
        }
        RootSearch::Irrational => RootSearch::Irrational,
        RootSearch::TooLarge => RootSearch::TooLarge,
    }
}

/// A point of intersection with its local intersection multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIntersection {
    pub point: Vec<Rational>,
    pub mult: u64,
}

/// Two independent points spanning a line.
fn line_points(l: &PlaneCurve) -> (Vec<Rational>, Vec<Rational>) {
    let k = kernel_basis(&MatQ::from_vec(1, 3, l.coeffs.clone()));
    (k[0].clone(), k[1].clone())
}

/// `(s, t) ↦ A(R,R)·p0 − 2·A(p0,R)·R` with `R = s·P1 + t·P2`: a birational
/// parametrization of a conic through the rational point `p0`.
struct ConicParam {
    p0: Vec<Rational>,
    p1: Vec<Rational>,
    p2: Vec<Rational>,
    m: MatQ,
}

impl ConicParam {
    fn new(conic: &PlaneCurve, p0: Vec<Rational>) -> Self {
        // complete p0 to a basis with two unit vectors
        let mut units = Vec::new();
        for k in 0..3 {
            let mut e = vec![Rational::zero(); 3];
            e[k] = Rational::one();
            let mut cand = units.clone();
            cand.push(e.clone());
            let mut rows = vec![p0.clone()];
            rows.extend(cand.iter().cloned());
            if crate::exactlin::rank_q(&MatQ::from_rows(&rows, 3)) == rows.len() {
                units.push(e);
            }
            if units.len() == 2 {
                break;
            }
        }
        Self {
            p0,
            p1: units[0].clone(),
            p2: units[1].clone(),
            m: conic.matrix(),
        }
    }

    fn bil(&self, u: &[Form], v: &[Form]) -> Form {
        let mut acc: Option<Form> = None;
        for i in 0..3 {
            for j in 0..3 {
                let term = u[i].mul(&v[j]).scale(&self.m[(i, j)]);
                acc = Some(match acc {
                    None => term,
                    Some(a) => a.add(&term),
                });
            }
        }
        acc.expect("3x3 form")
    }

    fn forms(&self) -> Vec<Form> {
        let r: Vec<Form> = (0..3).map(|k| Form::linear(self.p1[k].clone(), self.p2[k].clone())).collect();
        let p0c: Vec<Form> = self.p0.iter().map(|x| Form::constant(x.clone())).collect();
        let arr = self.bil(&r, &r);
        let a0r = self.bil(&p0c, &r).scale(&Rational::from_integer((-2).into()));
        (0..3).map(|k| arr.mul(&p0c[k]).add(&a0r.mul(&r[k]))).collect()
    }

    fn point(&self, s: &Rational, t: &Rational) -> Vec<Rational> {
        self.forms().iter().map(|f| eval_form(f, s, t)).collect()
    }
}

fn irrational(a: &PlaneCurve, b: &PlaneCurve) -> Error {
    Error::IrrationalIntersection(a.id.clone(), b.id.clone())
}

fn too_large(a: &PlaneCurve, b: &PlaneCurve) -> Error {
    Error::InvalidInput(format!(
        "coefficients of `{}` and `{}` are too large for the exact rational root search",
        a.id, b.id
    ))
}

fn roots_or_error(
    f: &Form,
    param: &dyn Fn(&Rational, &Rational) -> Vec<Rational>,
    a: &PlaneCurve,
    b: &PlaneCurve,
) -> Result<Vec<LocalIntersection>> {
    if f.is_zero() {
        return Err(Error::InvalidInput(format!("curves `{}` and `{}` coincide", a.id, b.id)));
    }
    match form_roots(f) {
        RootSearch::TooLarge => Err(too_large(a, b)),
        RootSearch::Irrational => Err(irrational(a, b)),
        RootSearch::Roots(roots) => Ok(roots
            .into_iter()
            .map(|(r, m)| {
                let (s, t) = match r {
                    Some(r) => (Rational::one(), r),
                    None => (Rational::zero(), Rational::one()),
                };
                LocalIntersection {
                    point: normalize(&param(&s, &t)),
                    mult: m as u64,
                }
            })
            .collect()),
    }
}

fn line_meets(line: &PlaneCurve, other: &PlaneCurve) -> Result<Vec<LocalIntersection>> {
    let (p, q) = line_points(line);
    let r: Vec<Form> = (0..3).map(|k| Form::linear(p[k].clone(), q[k].clone())).collect();
    let f = substitute(other, &r);
    let param = |s: &Rational, t: &Rational| -> Vec<Rational> { (0..3).map(|k| s * &p[k] + t * &q[k]).collect() };
    roots_or_error(&f, &param, line, other)
}

/// A rational point on a conic, found on one of the given lines or on a
/// coordinate line.
fn rational_point_on(conic: &PlaneCurve, lines: &[&PlaneCurve]) -> Option<Vec<Rational>> {
    let coordinate: Vec<PlaneCurve> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]]
        .iter()
        .map(|c| PlaneCurve::line("_", *c).expect("fixed line"))
        .collect();
    lines
        .iter()
        .copied()
        .chain(coordinate.iter())
        .find_map(|l| line_meets(l, conic).ok().and_then(|v| v.into_iter().next()))
        .map(|x| x.point)
}

/// Intersection points of two distinct curves with multiplicities.
/// `lines` supplies candidate lines for finding rational points on conics.
pub fn intersect_pair(a: &PlaneCurve, b: &PlaneCurve, lines: &[&PlaneCurve]) -> Result<Vec<LocalIntersection>> {
    if a.same_curve(b) {
        return Err(Error::InvalidInput(format!("curves `{}` and `{}` coincide", a.id, b.id)));
    }
    match (a.kind, b.kind) {
        (CurveKind::Line, CurveKind::Line) => Ok(vec![LocalIntersection {
            point: normalize(&cross(&a.coeffs, &b.coeffs)),
            mult: 1,
        }]),
        (CurveKind::Line, CurveKind::Conic) => line_meets(a, b),
        (CurveKind::Conic, CurveKind::Line) => line_meets(b, a),
        (CurveKind::Conic, CurveKind::Conic) => {
            let p0 = rational_point_on(a, lines).ok_or_else(|| irrational(a, b))?;
            let param = ConicParam::new(a, p0);
            let f = substitute(b, &param.forms());
            roots_or_error(&f, &|s, t| param.point(s, t), a, b)
        }
    }
}
