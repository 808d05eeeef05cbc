use crate::error::{FbmhError, Result};
use crate::real::Real;

/// Elementary smooth building block, written in the absolute variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Term<T> {
    /// `Σ c_k x^k`
    Poly(Vec<T>),
    /// `coef · e^{rate (x - origin)}`
    Exp { coef: T, rate: T, origin: T },
}

impl<T: Real> Term<T> {
    pub fn eval(&self, x: T) -> T {
        match self {
            Term::Poly(c) => c.iter().rev().fold(T::zero(), |acc, &ck| acc * x + ck),
            Term::Exp { coef, rate, origin } => *coef * (*rate * (x - *origin)).exp(),
        }
    }

    pub fn derivative(&self) -> Term<T> {
        match self {
            Term::Poly(c) => {
                let d: Vec<T> = c.iter().enumerate().skip(1).map(|(k, &ck)| ck * T::lit(k as f64)).collect();
                Term::Poly(d)
            }
            Term::Exp { coef, rate, origin } => Term::Exp { coef: *coef * *rate, rate: *rate, origin: *origin },
        }
    }

    fn scaled(&self, a: T) -> Term<T> {
        match self {
            Term::Poly(c) => Term::Poly(c.iter().map(|&x| x * a).collect()),
            Term::Exp { coef, rate, origin } => Term::Exp { coef: *coef * a, rate: *rate, origin: *origin },
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Term::Poly(c) => c.iter().all(|&x| x == T::zero()),
            Term::Exp { coef, .. } => *coef == T::zero(),
        }
    }
}

/// Smooth piece on `[start, end]`, the sum of its terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece<T> {
    pub start: T,
    pub end: T,
    pub terms: Vec<Term<T>>,
}

impl<T: Real> Piece<T> {
    pub fn eval(&self, x: T) -> T {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }
}

/// Piecewise-smooth function of bounded variation on `[0, t_end]`.
/// Jumps are allowed only at piece boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct BvFunction<T> {
    t_end: T,
    pieces: Vec<Piece<T>>,
}

impl<T: Real> BvFunction<T> {
    /// Pieces must tile `[0, t_end]` in order.
    pub fn from_pieces(t_end: T, pieces: Vec<Piece<T>>) -> Result<Self> {
        if !(t_end > T::zero()) || !t_end.is_finite() {
            return Err(FbmhError::domain(format!("domain length must be positive, got {t_end}")));
        }
        if pieces.is_empty() {
            return Err(FbmhError::domain("a BV function needs at least one piece"));
        }
        let mut cursor = T::zero();
        for p in &pieces {
            if p.start != cursor || !(p.end > p.start) {
                return Err(FbmhError::domain(format!(
                    "pieces must be contiguous and nonempty; got [{}, {}] after {cursor}",
                    p.start, p.end
                )));
            }
            cursor = p.end;
        }
        if cursor != t_end {
            return Err(FbmhError::domain(format!("pieces end at {cursor}, expected {t_end}")));
        }
        Ok(BvFunction { t_end, pieces })
    }

    pub fn constant(c: T, t_end: T) -> Result<Self> {
        Self::from_pieces(t_end, vec![Piece { start: T::zero(), end: t_end, terms: vec![Term::Poly(vec![c])] }])
    }

    /// `1_{[a,b]}` on `[0, t_end]`.
    pub fn indicator(a: T, b: T, t_end: T) -> Result<Self> {
        if !(T::zero() <= a && a < b && b <= t_end) {
            return Err(FbmhError::domain(format!("indicator needs 0 ≤ a < b ≤ T, got [{a}, {b}] in [0, {t_end}]")));
        }
        let mut pieces = Vec::new();
        let zero = || vec![Term::Poly(vec![])];
        if a > T::zero() {
            pieces.push(Piece { start: T::zero(), end: a, terms: zero() });
        }
        pieces.push(Piece { start: a, end: b, terms: vec![Term::Poly(vec![T::one()])] });
        if b < t_end {
            pieces.push(Piece { start: b, end: t_end, terms: zero() });
        }
        Self::from_pieces(t_end, pieces)
    }

    /// `e^{θ(u - t)} 1_{[0,t]}(u)` on `[0, t_end]`.
    pub fn ou_kernel(t: T, theta: T, t_end: T) -> Result<Self> {
        if !(t > T::zero() && t <= t_end) {
            return Err(FbmhError::domain(format!("kernel time {t} must lie in (0, {t_end}]")));
        }
        let mut pieces =
            vec![Piece { start: T::zero(), end: t, terms: vec![Term::Exp { coef: T::one(), rate: theta, origin: t }] }];
        if t < t_end {
            pieces.push(Piece { start: t, end: t_end, terms: vec![Term::Poly(vec![])] });
        }
        Self::from_pieces(t_end, pieces)
    }

    /// `Σ c_k x^k` on the whole interval.
    pub fn polynomial(coeffs: Vec<T>, t_end: T) -> Result<Self> {
        Self::from_pieces(t_end, vec![Piece { start: T::zero(), end: t_end, terms: vec![Term::Poly(coeffs)] }])
    }

    pub fn t_end(&self) -> T {
        self.t_end
    }

    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> Vec<T> {
        let mut b: Vec<T> = self.pieces.iter().map(|p| p.start).collect();
        b.push(self.t_end);
        b
    }

    /// Value at `x`, right-continuous at interior breakpoints.
    pub fn eval(&self, x: T) -> T {
        let idx = self.pieces.iter().position(|p| x < p.end).unwrap_or(self.pieces.len() - 1);
        self.pieces[idx].eval(x)
    }

    fn refined(&self, cuts: &[T]) -> Vec<Piece<T>> {
        let mut out = Vec::new();
        for p in &self.pieces {
            let mut start = p.start;
            for &c in cuts.iter().filter(|&&c| c > p.start && c < p.end) {
                out.push(Piece { start, end: c, terms: p.terms.clone() });
                start = c;
            }
            out.push(Piece { start, end: p.end, terms: p.terms.clone() });
        }
        out
    }

    /// `a·self + b·other` on the common refinement of the two partitions.
    pub fn linear_combination(&self, a: T, other: &BvFunction<T>, b: T) -> Result<Self> {
        if self.t_end != other.t_end {
            return Err(FbmhError::domain("functions live on different intervals"));
        }
        let mut cuts = self.breakpoints();
        cuts.extend(other.breakpoints());
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        let p1 = self.refined(&cuts);
        let p2 = other.refined(&cuts);
        let pieces = p1
            .into_iter()
            .zip(p2)
            .map(|(x, y)| {
                let mut terms: Vec<Term<T>> = x.terms.iter().map(|t| t.scaled(a)).collect();
                terms.extend(y.terms.iter().map(|t| t.scaled(b)));
                Piece { start: x.start, end: x.end, terms }
            })
            .collect();
        Self::from_pieces(self.t_end, pieces)
    }

    /// Lebesgue–Stieltjes measure of the function extended by zero outside
    /// `[0, T]`.
    pub fn measure(&self) -> StieltjesMeasure<T> {
        let mut atoms = Vec::new();
        let first = &self.pieces[0];
        let v0 = first.eval(T::zero());
        if v0 != T::zero() {
            atoms.push((T::zero(), v0));
        }
        for w in self.pieces.windows(2) {
            let jump = w[1].eval(w[1].start) - w[0].eval(w[0].end);
            if jump != T::zero() {
                atoms.push((w[1].start, jump));
            }
        }
        let last = self.pieces.last().unwrap();
        let vt = last.eval(self.t_end);
        if vt != T::zero() {
            atoms.push((self.t_end, -vt));
        }
        let density = self
            .pieces
            .iter()
            .map(|p| Piece { start: p.start, end: p.end, terms: p.terms.iter().map(|t| t.derivative()).collect() })
            .collect();
        StieltjesMeasure { t_end: self.t_end, density, atoms }
    }
}

/// Signed measure: absolutely continuous part with piecewise density plus atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct StieltjesMeasure<T> {
    pub t_end: T,
    pub density: Vec<Piece<T>>,
    pub atoms: Vec<(T, T)>,
}

impl<T: Real> StieltjesMeasure<T> {
    /// Total mass; zero for every function extended by zero.
    pub fn total_mass(&self) -> T {
        let ac: T = self
            .density
            .iter()
            .map(|p| {
                // the density is a derivative, so its integral telescopes
                let anti = |x: T| -> T {
                    p.terms
                        .iter()
                        .map(|t| match t {
                            Term::Poly(c) => c
                                .iter()
                                .enumerate()
                                .map(|(k, &ck)| ck * x.powi(k as i32 + 1) / T::lit((k + 1) as f64))
                                .sum(),
                            Term::Exp { coef, rate, origin } => {
                                if *rate == T::zero() {
                                    *coef * x
                                } else {
                                    *coef / *rate * (*rate * (x - *origin)).exp()
                                }
                            }
                        })
                        .sum()
                };
                anti(p.end) - anti(p.start)
            })
            .sum();
        ac + self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn has_density(&self) -> bool {
        self.density.iter().any(|p| !p.is_zero())
    }
}

/// Measure of `g`; see [`BvFunction::measure`].
pub fn measure_of<T: Real>(g: &BvFunction<T>) -> StieltjesMeasure<T> {
    g.measure()
}
