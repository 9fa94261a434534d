//! Recursive-descent parser for map expressions such as `(X-Y)^2*Y*[-X:Y]`.
//!
//! Polynomials are accumulated as a list of homogeneous components, one per
//! total degree in `X, Y`; homogeneity is checked only where it matters.

use std::marker::PhantomData;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::degeneration::FamilyPoint;
use crate::error::Error;
use crate::exactalg::{Field, FieldContext, HomogForm, MinPoly, Poly, RatFunc, Q};
use crate::projmap::{MapPoint, Mobius, ProjPoint};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map_or(text.len(), |p| p.0);
            let n: BigInt = text[pos..end].parse().expect("digits");
            out.push((Tok::Num(n), pos));
            i = j;
        } else if c.is_ascii_alphabetic() {
            out.push((Tok::Ident(c), pos));
            i += 1;
        } else if "+-*/^()[]:".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

/// Homogeneous components indexed by total degree.
#[derive(Clone, Debug)]
struct Graded<K: Field>(Vec<HomogForm<K>>);

impl<K: Field> Graded<K> {
    fn scalar(c: K) -> Self {
        Graded(vec![HomogForm::constant(c)]).trim()
    }

    fn form(h: HomogForm<K>) -> Self {
        let d = h.degree();
        let mut v: Vec<HomogForm<K>> = (0..d).map(HomogForm::zero).collect();
        v.push(h);
        Graded(v).trim()
    }

    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|h| h.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn as_scalar(&self) -> Option<K> {
        match self.0.len() {
            0 => Some(K::zero()),
            1 => Some(self.0[0].coeff(0).clone()),
            _ => None,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let v = (0..n)
            .map(|d| match (self.0.get(d), rhs.0.get(d)) {
                (Some(a), Some(b)) => a.add(b).expect("equal degrees"),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Graded(v).trim()
    }

    fn neg(&self) -> Self {
        Graded(self.0.iter().map(|h| h.neg()).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Graded(Vec::new());
        }
        let n = self.0.len() + rhs.0.len() - 1;
        let mut v: Vec<HomogForm<K>> = (0..n).map(HomogForm::zero).collect();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b)).expect("equal degrees");
                }
            }
        }
        Graded(v).trim()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Graded::scalar(K::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The single nonzero component; `None` for the zero polynomial.
    fn homogeneous(&self, pos: usize) -> Result<Option<HomogForm<K>>, Error> {
        let nonzero: Vec<&HomogForm<K>> = self.0.iter().filter(|h| !h.is_zero()).collect();
        match nonzero.len() {
            0 => Ok(None),
            1 => Ok(Some(nonzero[0].clone())),
            _ => {
                let degrees: Vec<usize> = nonzero.iter().map(|h| h.degree()).collect();
                Err(Error::Inhomogeneous(format!("at {pos}: terms of degrees {degrees:?}")))
            }
        }
    }
}

const MAX_EXPONENT: u64 = 1 << 16;

struct Parser<'c, K: Field> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    ctx: &'c FieldContext,
    /// Univariate mode: this letter plays the role of `X` and `Y` is rejected.
    var: Option<char>,
    _k: PhantomData<K>,
}

impl<'c, K: Field> Parser<'c, K> {
    fn new(text: &str, ctx: &'c FieldContext) -> Result<Self, Error> {
        Ok(Parser { toks: lex(text)?, pos: 0, end: text.len(), ctx, var: None, _k: PhantomData })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        Err(Error::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn finish(&self) -> Result<(), Error> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err("unexpected trailing input"),
        }
    }

    fn poly(&mut self) -> Result<Graded<K>, Error> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Graded<K>, Error> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                // `*[` ends the hole prefix of a map expression
                Some(Tok::Op('*')) if self.peek_at(1) == Some(&Tok::Op('[')) => return Ok(acc),
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let at = self.here();
                    let den = self.unary()?;
                    let inv = den.as_scalar().and_then(|c| c.inv()).ok_or_else(|| Error::Syntax {
                        pos: at,
                        msg: "divisor must be a nonzero scalar".into(),
                    })?;
                    acc = acc.mul(&Graded::scalar(inv));
                }
                _ if self.starts_atom() => acc = acc.mul(&self.unary()?),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Graded<K>, Error> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Graded<K>, Error> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let e = u64::try_from(&n).ok().filter(|e| *e <= MAX_EXPONENT);
                match e {
                    Some(e) => {
                        self.pos += 1;
                        Ok(base.pow(e))
                    }
                    None => self.err(format!("exponent {n} out of range")),
                }
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Graded<K>, Error> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Graded::scalar(K::from_rational(&BigRational::from_integer(n))))
            }
            Some(Tok::Ident(c)) => {
                let g = self.ident(c)?;
                self.pos += 1;
                Ok(g)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(_) => self.err("expected a number, a variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident(&self, c: char) -> Result<Graded<K>, Error> {
        if let Some(v) = self.var {
            if c == v {
                return Ok(Graded::form(HomogForm::x()));
            }
        } else {
            match c {
                'X' => return Ok(Graded::form(HomogForm::x())),
                'Y' => return Ok(Graded::form(HomogForm::y())),
                _ => {}
            }
        }
        let gaussian = self.ctx.minpoly.as_deref() == Some(&MinPoly::gaussian());
        let sym = match c {
            'i' if gaussian => K::symbol('w', self.ctx),
            'X' | 'Y' => None,
            _ => K::symbol(c, self.ctx),
        };
        match sym {
            Some(s) => Ok(Graded::scalar(s)),
            None => self.err(format!("symbol '{c}' is not available in this field")),
        }
    }

    fn scalar(&mut self) -> Result<K, Error> {
        let at = self.here();
        self.poly()?
            .as_scalar()
            .ok_or_else(|| Error::Syntax { pos: at, msg: "expected a scalar".into() })
    }

    /// `"[" poly ":" poly "]"` as a pair of homogeneous forms of equal degree.
    fn bracket(&mut self) -> Result<(HomogForm<K>, HomogForm<K>), Error> {
        self.expect('[')?;
        let at_p = self.here();
        let p = self.poly()?.homogeneous(at_p)?;
        self.expect(':')?;
        let at_q = self.here();
        let q = self.poly()?.homogeneous(at_q)?;
        self.expect(']')?;
        match (p, q) {
            (None, None) => Err(Error::InvalidMap("both coordinates are zero".into())),
            (Some(p), None) => {
                let d = p.degree();
                Ok((p, HomogForm::zero(d)))
            }
            (None, Some(q)) => Ok((HomogForm::zero(q.degree()), q)),
            (Some(p), Some(q)) if p.degree() != q.degree() => Err(Error::Inhomogeneous(format!(
                "at {at_q}: coordinates of degrees {} and {}",
                p.degree(),
                q.degree()
            ))),
            (Some(p), Some(q)) => Ok((p, q)),
        }
    }

    fn map(&mut self) -> Result<MapPoint<K>, Error> {
        let at = self.here();
        let h = if self.peek() == Some(&Tok::Op('[')) {
            HomogForm::one()
        } else {
            let g = self.term()?;
            self.eat('*');
            match g.homogeneous(at)? {
                Some(h) => h,
                None => return Err(Error::InvalidMap("hole polynomial is zero".into())),
            }
        };
        let (p, q) = self.bracket()?;
        self.finish()?;
        if h.degree() + p.degree() == 0 {
            return Err(Error::DegreeZeroMap);
        }
        MapPoint::new(h.mul(&p), h.mul(&q))
    }
}

/// Parse a map over any field, resolving `w` and `t` through `ctx`.
pub fn parse_map_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<MapPoint<K>, Error> {
    Parser::<K>::new(text, ctx)?.map()
}

/// Parse a map with rational coefficients.
pub fn parse_map(text: &str) -> Result<MapPoint<Q>, Error> {
    parse_map_in(text, &FieldContext::default())
}

/// A homogeneous form in `X, Y`.
pub fn parse_form_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<HomogForm<K>, Error> {
    let mut p = Parser::<K>::new(text, ctx)?;
    let g = p.poly()?;
    p.finish()?;
    Ok(g.homogeneous(0)?.unwrap_or_else(|| HomogForm::zero(0)))
}

pub fn parse_scalar_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<K, Error> {
    let mut p = Parser::<K>::new(text, ctx)?;
    let c = p.scalar()?;
    p.finish()?;
    Ok(c)
}

/// A family over `K(t)` with the default conjugator `[tX+Y:Y]`.
pub fn parse_family_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<FamilyPoint<K>, Error> {
    Ok(FamilyPoint::new(parse_map_in::<RatFunc<K>>(text, ctx)?))
}

pub fn parse_family(text: &str) -> Result<FamilyPoint<Q>, Error> {
    parse_family_in(text, &FieldContext::default())
}

/// `[aX+bY : cX+dY]`
pub fn parse_mobius_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<Mobius<K>, Error> {
    let mut p = Parser::<K>::new(text, ctx)?;
    let (a, b) = p.bracket()?;
    p.finish()?;
    if a.degree() != 1 {
        return Err(Error::InvalidMap(format!("Möbius coordinates must be linear, got degree {}", a.degree())));
    }
    Mobius::new(a.coeff(0).clone(), a.coeff(1).clone(), b.coeff(0).clone(), b.coeff(1).clone())
}

/// `[a:b]`, a scalar `a` meaning `[a:1]`, or `inf`.
pub fn parse_point_in<K: Field>(text: &str, ctx: &FieldContext) -> Result<ProjPoint<K>, Error> {
    let s = text.trim();
    if matches!(s, "inf" | "oo" | "∞") {
        return Ok(ProjPoint::infinity());
    }
    let mut p = Parser::<K>::new(s, ctx)?;
    if p.peek() != Some(&Tok::Op('[')) {
        let a = p.scalar()?;
        p.finish()?;
        return Ok(ProjPoint::affine(a));
    }
    p.expect('[')?;
    let a = p.scalar()?;
    p.expect(':')?;
    let b = p.scalar()?;
    p.expect(']')?;
    p.finish()?;
    ProjPoint::new(a, b)
}

/// Minimal polynomial of the generator, written in `w`.
pub fn parse_minpoly(text: &str) -> Result<MinPoly, Error> {
    let ctx = FieldContext::default();
    let mut p = Parser::<Q>::new(text, &ctx)?;
    p.var = Some('w');
    let g = p.poly()?;
    p.finish()?;
    let coeffs: Vec<Q> = g.0.iter().map(|h| h.coeff(0).clone()).collect();
    MinPoly::new(Poly::new(coeffs))
}

/// Which exact field the scalars live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// The rationals.
    Q,
    /// `Q(i)`, with `i` or `w` for the generator.
    Qi,
    /// `Q(w)` for a given minimal polynomial.
    Qw(Arc<MinPoly>),
    /// `Q(t)`
    Qt,
}

impl FieldSpec {
    pub fn context(&self) -> FieldContext {
        match self {
            FieldSpec::Qi => FieldContext { minpoly: Some(Arc::new(MinPoly::gaussian())) },
            FieldSpec::Qw(m) => FieldContext { minpoly: Some(m.clone()) },
            FieldSpec::Q | FieldSpec::Qt => FieldContext::default(),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "q" => Ok(FieldSpec::Q),
            "qi" => Ok(FieldSpec::Qi),
            "qt" => Ok(FieldSpec::Qt),
            _ => match s.strip_prefix("qw:") {
                Some(m) => Ok(FieldSpec::Qw(Arc::new(parse_minpoly(m)?))),
                None => Err(Error::Field(format!("unknown field {s:?}; use q, qi, qw:<minpoly> or qt"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{q, QExt, Qt};

    fn lin(a: i64, b: i64) -> HomogForm<Q> {
        HomogForm::vanishing_at(&q(a), &q(b))
    }

    #[test]
    fn example_map() {
        let f = parse_map("(X-Y)^2*Y*[-X:Y]").unwrap();
        let g = MapPoint::from_parts(&lin(1, 1).pow(2).mul(&HomogForm::y()), &HomogForm::x().neg(), &HomogForm::y()).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_map(" ( X - Y ) ^ 2 Y [ -X : Y ] ").unwrap(), g);
    }

    #[test]
    fn identity_and_constants() {
        let id = parse_map("[X:Y]").unwrap();
        assert_eq!(id, MapPoint::identity());
        let f = parse_map("X*Y*(X-Y)*(X-2*Y)*[0:1]").unwrap();
        assert_eq!(f.degree(), 4);
        assert!(matches!(parse_map("[1:2]"), Err(Error::DegreeZeroMap)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_map("(X-Y)^2*[X:Y") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_map("(X+Y^2)[X:Y]"), Err(Error::Inhomogeneous(_))));
        assert!(matches!(parse_map("[X^2:Y]"), Err(Error::Inhomogeneous(_))));
        assert!(matches!(parse_map("[X:w*Y]"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_map("X$[X:Y]"), Err(Error::Syntax { pos: 1, .. })));
    }

    #[test]
    fn rationals_and_division() {
        let f = parse_map("(X-3/2*Y)*[X/2:Y]").unwrap();
        let g = parse_map("(2X-3Y)[X:2Y]").unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn family_in_t() {
        let f = parse_family("(X-(1+t)*Y)*(X-Y)*[-X*Y : t*X^2+Y^2]").unwrap();
        assert_eq!(f.map.degree(), 4);
        let at0 = f.at_zero().unwrap();
        assert_eq!(at0, parse_map("(X-Y)^2*[-X*Y:Y^2]").unwrap());
        let g: MapPoint<Qt> = parse_map_in("(t^2+t)/(t)*X*[X:Y]", &FieldContext::default()).unwrap();
        assert_eq!(g, parse_map_in("X*[X:Y]", &FieldContext::default()).unwrap());
    }

    #[test]
    fn gaussian_field() {
        let spec: FieldSpec = "qi".parse().unwrap();
        let ctx = spec.context();
        let f: MapPoint<QExt> = parse_map_in("(X-i*Y)(X+i*Y)[Y:X]", &ctx).unwrap();
        let g: MapPoint<QExt> = parse_map_in("(X^2+Y^2)[Y:X]", &ctx).unwrap();
        assert_eq!(f, g);
        let spec: FieldSpec = "qw:w^2+w+1".parse().unwrap();
        let ctx = spec.context();
        let w: QExt = parse_scalar_in("w", &ctx).unwrap();
        assert!(w.pow(3).is_one());
        assert!("qw:w^2-1".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn points_and_mobius() {
        let ctx = FieldContext::default();
        assert_eq!(parse_point_in::<Q>("[1:0]", &ctx).unwrap(), ProjPoint::infinity());
        assert_eq!(parse_point_in::<Q>("inf", &ctx).unwrap(), ProjPoint::infinity());
        assert_eq!(parse_point_in::<Q>("[2:4]", &ctx).unwrap(), ProjPoint::affine(crate::exactalg::qr(1, 2)));
        assert_eq!(parse_point_in::<Q>("-3", &ctx).unwrap(), ProjPoint::from_i64(-3));
        let m: Mobius<Qt> = parse_mobius_in("[t*X+Y:Y]", &ctx).unwrap();
        assert_eq!(m.apply(&ProjPoint::from_i64(0)), ProjPoint::from_i64(1));
        assert!(parse_mobius_in::<Q>("[X:X]", &ctx).is_err());
    }

    #[test]
    fn printer_round_trip() {
        for s in [
            "(X-Y)^2*Y*[-X:Y]",
            "(X-Y)^8*(X+Y)^2*Y^5*[X:Y]",
            "X^13*Y^13*[Y:X]",
            "(X^2+Y^2)^2*[3*X+Y:X-7/3*Y]",
            "X*Y*(X-Y)*(X-2*Y)*[0:1]",
            "[X^2-Y^2:X*Y]",
        ] {
            let f = parse_map(s).unwrap();
            assert_eq!(parse_map(&f.to_string()).unwrap(), f, "{s} printed as {f}");
        }
        let ctx = FieldContext::default();
        let fam: MapPoint<Qt> = parse_map_in("(X-(1+t)*Y)*(X-Y)*[-X*Y : t*X^2+Y^2]", &ctx).unwrap();
        assert_eq!(parse_map_in::<Qt>(&fam.to_string(), &ctx).unwrap(), fam);
    }
}
