use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{accumulate, reduce, Letter, Monomial, RewriteError};
use crate::field::Scalar;
use crate::presentation::{Flavor, GPresentation};

/// An element of `A_n`, `B_n` or `C_n` in PBW normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCElement {
    pres: Arc<GPresentation>,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Normal form of `coeff * word`.
pub fn normal_form(pres: &Arc<GPresentation>, coeff: Scalar, word: &[Letter]) -> Result<NCElement, RewriteError> {
    let (xs, z) = split_word(pres, word)?;
    let terms = reduce(pres, vec![(xs, z, coeff)])?;
    Ok(NCElement { pres: pres.clone(), terms })
}

fn split_word(pres: &GPresentation, word: &[Letter]) -> Result<(Vec<u16>, u32), RewriteError> {
    let mut xs = Vec::with_capacity(word.len());
    let mut z = 0;
    for &l in word {
        match l {
            Letter::Z if pres.flavor() != Flavor::Homogenized => {
                return Err(RewriteError::ZNotAvailable(pres.flavor()))
            }
            Letter::Z => z += 1,
            Letter::X(i) if i >= pres.n() => return Err(RewriteError::GeneratorOutOfRange(i)),
            Letter::X(i) => xs.push(i as u16),
        }
    }
    Ok((xs, z))
}

impl NCElement {
    pub fn zero(pres: &Arc<GPresentation>) -> Self {
        NCElement { pres: pres.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(pres: &Arc<GPresentation>, s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        accumulate(&mut terms, Monomial::one(pres.n()), s);
        NCElement { pres: pres.clone(), terms }
    }

    pub fn one(pres: &Arc<GPresentation>) -> Self {
        Self::scalar(pres, pres.field().one())
    }

    pub fn letter(pres: &Arc<GPresentation>, l: Letter) -> Result<Self, RewriteError> {
        normal_form(pres, pres.field().one(), &[l])
    }

    /// Builds an element from monomials already in normal form.
    pub fn from_terms(pres: &Arc<GPresentation>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exps().len(), pres.n(), "monomial arity");
            accumulate(&mut map, m, c);
        }
        NCElement { pres: pres.clone(), terms: map }
    }

    /// Parses text such as `3/2*D*X^2 - Z*Z + 1` and reduces it.
    pub fn parse(pres: &Arc<GPresentation>, text: &str) -> Result<Self, RewriteError> {
        let words = parse_words(pres, text)?;
        let mut split = Vec::with_capacity(words.len());
        for (c, w) in words {
            let (xs, z) = split_word(pres, &w)?;
            split.push((xs, z, c));
        }
        let terms = reduce(pres, split)?;
        Ok(NCElement { pres: pres.clone(), terms })
    }

    pub fn presentation(&self) -> &Arc<GPresentation> {
        &self.pres
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.pres.field().zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn check_same(&self, other: &NCElement) -> Result<(), RewriteError> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres == other.pres {
            Ok(())
        } else {
            Err(RewriteError::PresentationMismatch)
        }
    }

    pub fn add(&self, other: &NCElement) -> Result<NCElement, RewriteError> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(NCElement { pres: self.pres.clone(), terms })
    }

    pub fn neg(&self) -> NCElement {
        self.scale(&-self.pres.field().one())
    }

    pub fn sub(&self, other: &NCElement) -> Result<NCElement, RewriteError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> NCElement {
        let terms =
            if s.is_zero() { BTreeMap::new() } else { self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() };
        NCElement { pres: self.pres.clone(), terms }
    }

    /// Product `self * other`, reduced to normal form.
    pub fn mul(&self, other: &NCElement) -> Result<NCElement, RewriteError> {
        self.check_same(other)?;
        let mut words = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            let w1 = m1.x_word();
            for (m2, c2) in &other.terms {
                let mut xs = w1.clone();
                xs.extend(m2.x_word());
                words.push((xs, m1.z_exp() + m2.z_exp(), c1 * c2));
            }
        }
        let terms = reduce(&self.pres, words)?;
        Ok(NCElement { pres: self.pres.clone(), terms })
    }

    /// Image under `B_n -> B_n / (Z - 1) = A_n`.
    pub fn dehomogenize(&self) -> Result<NCElement, RewriteError> {
        let plain = Arc::new(self.pres.dehomogenize()?);
        let terms = self.terms.iter().map(|(m, c)| (m.with_z(0), c.clone()));
        Ok(NCElement::from_terms(&plain, terms))
    }

    /// Pads every term with `Z` up to `target` degree, giving a homogeneous
    /// element of `B_n`.
    pub fn homogenize(&self, target: u32) -> Result<NCElement, RewriteError> {
        let homog = Arc::new(self.pres.homogenize()?);
        if let Some(degree) = self.degree() {
            if degree > target {
                return Err(RewriteError::TargetDegree { target, degree });
            }
        }
        let terms = self.terms.iter().map(|(m, c)| (m.with_z(target - m.degree()), c.clone()));
        Ok(NCElement::from_terms(&homog, terms))
    }
}

impl fmt::Display for NCElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = m.render(self.pres.gen_names());
            if mono == "1" {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token<'a> {
    Num(&'a str),
    Ident(&'a str),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>, RewriteError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        let single = match ch {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '+' => Some(Token::Plus),
            '-' | '\u{2212}' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '/' => Some(Token::Slash),
            _ => None,
        };
        if let Some(t) = single {
            chars.next();
            out.push((start, t));
            continue;
        }
        let mut end = start;
        if ch.is_ascii_digit() {
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            out.push((start, Token::Num(&text[start..end])));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            while let Some(&(i, c)) = chars.peek() {
                if !(c.is_ascii_alphanumeric() || c == '_') {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            out.push((start, Token::Ident(&text[start..end])));
        } else {
            return Err(RewriteError::Parse { offset: start, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

/// Parses element text into `(coefficient, word)` pairs without reducing.
pub(crate) fn parse_words(pres: &GPresentation, text: &str) -> Result<Vec<(Scalar, Vec<Letter>)>, RewriteError> {
    let field = pres.field();
    let tokens = tokenize(text)?;
    let end = text.len();
    let mut pos = 0;
    let err = |offset: usize, message: String| RewriteError::Parse { offset, message };
    let at = |pos: usize| tokens.get(pos).map_or(end, |t| t.0);
    let mut terms = Vec::new();

    if tokens.is_empty() {
        return Err(err(0, "empty expression".into()));
    }
    loop {
        let mut coeff = field.one();
        while let Some((_, t @ (Token::Plus | Token::Minus))) = tokens.get(pos) {
            if *t == Token::Minus {
                coeff = -coeff;
            }
            pos += 1;
        }
        let mut word = Vec::new();
        loop {
            match tokens.get(pos) {
                Some((off, Token::Num(num))) => {
                    pos += 1;
                    let mut lit = num.to_string();
                    if let Some((_, Token::Slash)) = tokens.get(pos) {
                        match tokens.get(pos + 1) {
                            Some((_, Token::Num(den))) => {
                                lit = format!("{num}/{den}");
                                pos += 2;
                            }
                            _ => return Err(err(at(pos + 1), "expected denominator".into())),
                        }
                    }
                    let s = field.parse(&lit).map_err(|e| err(*off, e.to_string()))?;
                    coeff = &coeff * &s;
                }
                Some((off, Token::Ident(name))) => {
                    pos += 1;
                    let letter = if *name == "Z" {
                        if pres.flavor() != Flavor::Homogenized {
                            return Err(RewriteError::ZNotAvailable(pres.flavor()));
                        }
                        Letter::Z
                    } else {
                        match pres.gen_index(name) {
                            Some(i) => Letter::X(i),
                            None => return Err(RewriteError::UnknownGenerator(name.to_string())),
                        }
                    };
                    let mut power = 1usize;
                    if let Some((_, Token::Caret)) = tokens.get(pos) {
                        match tokens.get(pos + 1) {
                            Some((e_off, Token::Num(e))) => {
                                power = e.parse().map_err(|_| err(*e_off, format!("bad exponent `{e}`")))?;
                                if power > pres.degree_cap() {
                                    return Err(RewriteError::DegreeCap { degree: power, cap: pres.degree_cap() });
                                }
                                pos += 2;
                            }
                            _ => return Err(err(at(pos + 1), "expected exponent".into())),
                        }
                    }
                    let _ = off;
                    word.extend(std::iter::repeat_n(letter, power));
                }
                _ => return Err(err(at(pos), "expected a scalar or generator".into())),
            }
            match tokens.get(pos) {
                Some((_, Token::Star)) => pos += 1,
                _ => break,
            }
        }
        terms.push((coeff, word));
        match tokens.get(pos) {
            None => break,
            Some((_, Token::Plus | Token::Minus)) => {}
            Some((off, _)) => return Err(err(*off, "expected `+`, `-` or `*`".into())),
        }
    }
    Ok(terms)
}
