//! Reference relations of the cubic surface, used as golden data.
//!
//! The list is written in terms of the parameters `a, b, c, d` of
//! `p_5 = (1:a:b)`, `p_6 = (1:c:d)` and the abbreviations
//! `E = (b-1)(c-1) - (a-1)(d-1)`, `F = bc - ad`. Its generators are scaled
//! by determinants, `f = det(v(x), v(p_i), ...)`, which differs from the
//! canonical "leading coefficient 1" scaling used by [`crate::plane`]; the
//! comparison rescales each generator before testing span membership.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Row;
use crate::picard::{anticanonical, CurveKind, Generator, GeneratorPayload};
use crate::plane::{determinantal_form, PlaneForm, PointConfiguration};
use crate::relations::{span_contains_with_forms, RelationSet};
use crate::rulings::Monomial;

const DATA: &str = include_str!("../../data/cubic_surface_relations.txt");

/// One reference relation: `sum coeff * xi(g) xi(h)` in the ruling `-K_6 - line`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceRelation {
    /// Label of the line `L` whose ruling `-K_6 - L` carries the relation.
    pub line: String,
    /// Position (1, 2 or 3) of the relation within its line's group.
    pub index: usize,
    pub terms: Vec<(String, [String; 2])>,
}

/// The 81 reference relations in file order.
pub fn reference_relations() -> Vec<ReferenceRelation> {
    DATA.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split('|').map(str::trim);
            let head = parts.next().expect("header field");
            let (line, index) = head.rsplit_once(' ').expect("label and index");
            let terms = parts
                .map(|t| {
                    let (coeff, mono) = t.split_once(':').expect("coefficient : monomial");
                    let gens: Vec<&str> = mono.split_whitespace().collect();
                    (coeff.trim().to_string(), [gens[0].to_string(), gens[1].to_string()])
                })
                .collect();
            ReferenceRelation {
                line: line.to_string(),
                index: index.parse().expect("numeric index"),
                terms,
            }
        })
        .collect()
}

/// Values of the symbols that may appear in reference coefficients.
pub struct CubicParameters<F: Field> {
    values: HashMap<char, F::Elem>,
}

impl<F: Field> CubicParameters<F> {
    pub fn from_configuration(cfg: &PointConfiguration<F>) -> Result<Self> {
        if cfg.r() != 6 {
            return Err(Error::Precondition(format!(
                "reference relations live on r = 6, got r = {}",
                cfg.r()
            )));
        }
        let f = cfg.field();
        let p = cfg.parameters();
        let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
        let one = f.one();
        let e = f.sub(
            &f.mul(&f.sub(b, &one), &f.sub(c, &one)),
            &f.mul(&f.sub(a, &one), &f.sub(d, &one)),
        );
        let ff = f.sub(&f.mul(b, c), &f.mul(a, d));
        let values = HashMap::from([
            ('a', a.clone()),
            ('b', b.clone()),
            ('c', c.clone()),
            ('d', d.clone()),
            ('E', e),
            ('F', ff),
        ]);
        Ok(CubicParameters { values })
    }

    /// The quantities the reference coefficients divide by:
    /// `b, d, E, a - c, c - 1, a - 1`. Returns the first that vanishes.
    pub fn vanishing_denominator(&self, f: &F) -> Option<&'static str> {
        let v = |c: char| &self.values[&c];
        let one = f.one();
        let checks: [(&'static str, F::Elem); 6] = [
            ("b", v('b').clone()),
            ("d", v('d').clone()),
            ("E", v('E').clone()),
            ("a-c", f.sub(v('a'), v('c'))),
            ("c-1", f.sub(v('c'), &one)),
            ("a-1", f.sub(v('a'), &one)),
        ];
        checks.into_iter().find(|(_, x)| f.is_zero(x)).map(|(n, _)| n)
    }

    pub fn evaluate(&self, f: &F, expr: &str) -> Result<F::Elem> {
        let tokens = tokenize(expr)?;
        let mut parser = ExprParser {
            f,
            params: self,
            tokens: &tokens,
            pos: 0,
        };
        let v = parser.sum()?;
        if parser.pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input in {expr:?}")));
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Sym(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n: String = chars[start..=i].iter().collect();
                out.push(Token::Num(n.parse().map_err(|_| Error::Parse(n.clone()))?));
            }
            'a' | 'b' | 'c' | 'd' | 'E' | 'F' => out.push(Token::Sym(c)),
            '+' | '-' | '*' | '/' | '(' | ')' => out.push(Token::Op(c)),
            _ => return Err(Error::Parse(format!("unexpected {c:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

/// sum := product (('+'|'-') product)*
/// product := unary (('*'|'/')? unary)*   -- juxtaposition multiplies
/// unary := '-' unary | atom
struct ExprParser<'a, F: Field> {
    f: &'a F,
    params: &'a CubicParameters<F>,
    tokens: &'a [Token],
    pos: usize,
}

impl<F: Field> ExprParser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn sum(&mut self) -> Result<F::Elem> {
        let mut acc = self.product()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' {
                self.f.add(&acc, &rhs)
            } else {
                self.f.sub(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<F::Elem> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.f.mul(&acc, &rhs);
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = self.f.div(&acc, &rhs)?;
                }
                Some(Token::Num(_) | Token::Sym(_) | Token::Op('(')) => {
                    let rhs = self.unary()?;
                    acc = self.f.mul(&acc, &rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<F::Elem> {
        if let Some(Token::Op('-')) = self.peek() {
            self.pos += 1;
            let v = self.unary()?;
            return Ok(self.f.neg(&v));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<F::Elem> {
        let tok = self
            .peek()
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Num(n) => Ok(self.f.from_i64(n)),
            Token::Sym(s) => Ok(self.params.values[&s].clone()),
            Token::Op('(') => {
                let v = self.sum()?;
                match self.peek() {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected {c:?}"))),
        }
    }
}

/// Factors `t_g` with `f_g(reference) = t_g * f_g(canonical)` for the
/// generators of the cubic surface.
pub fn reference_scaling<F: Field>(
    gens: &[Generator],
    forms: &[PlaneForm<F>],
    cfg: &PointConfiguration<F>,
) -> Result<Row<F>> {
    let f = cfg.field();
    gens.iter()
        .zip(forms)
        .map(|(g, canonical)| {
            let GeneratorPayload::Curve(curve) = &g.payload else {
                return Err(Error::Precondition("no reference scaling for K_i".into()));
            };
            let reference = match &curve.kind {
                CurveKind::Exceptional(_) => return Ok(f.one()),
                CurveKind::Line(i, j) => determinantal_form(cfg, 1, &[*i, *j])?,
                CurveKind::Conic(missing) => {
                    let through: Vec<usize> = (1..=cfg.r()).filter(|i| !missing.contains(i)).collect();
                    determinantal_form(cfg, 2, &through)?
                }
                other => {
                    return Err(Error::Precondition(format!("no reference scaling for {other}")))
                }
            };
            let lead = canonical
                .coeffs
                .iter()
                .position(|c| !f.is_zero(c))
                .expect("forms are nonzero");
            Ok(reference.coeffs[lead].clone())
        })
        .collect()
}

/// Outcome of one reference line.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReferenceCheck {
    pub line: String,
    pub index: usize,
    pub in_span: bool,
}

/// Tests each reference relation for membership in the generated relation
/// block of its ruling, after rescaling generators to the reference
/// convention. Requires `r = 6` and non-vanishing denominators.
pub fn check_reference_relations<F: Field>(rs: &RelationSet<F>) -> Result<Vec<ReferenceCheck>> {
    let cfg = &rs.cfg;
    let f = cfg.field();
    let params = CubicParameters::from_configuration(cfg)?;
    if let Some(name) = params.vanishing_denominator(f) {
        return Err(Error::Precondition(format!(
            "reference coefficients divide by {name}, which vanishes for these points"
        )));
    }
    let scale = reference_scaling(&rs.generators, &rs.forms, cfg)?;
    let id_of = |label: &str| -> Result<usize> {
        rs.generators
            .iter()
            .position(|g| g.label() == label)
            .ok_or_else(|| Error::Parse(format!("unknown generator {label}")))
    };
    let minus_k = anticanonical(6)?;
    reference_relations()
        .into_iter()
        .map(|rel| {
            let line = &rs.generators[id_of(&rel.line)?];
            let block = rs
                .block(&(&minus_k - &line.class))
                .ok_or_else(|| Error::Precondition(format!("no ruling for {}", rel.line)))?;
            let reps = &block.ruling.representations;
            let mut candidate = vec![f.zero(); reps.len()];
            let mut well_formed = true;
            for (coeff, [g, h]) in &rel.terms {
                let (a, b) = (id_of(g)?, id_of(h)?);
                let Some(pos) = reps.iter().position(|m| *m == Monomial::new(a, b)) else {
                    well_formed = false;
                    continue;
                };
                let c = params.evaluate(f, coeff)?;
                let c = f.mul(&c, &f.mul(&scale[a], &scale[b]));
                candidate[pos] = f.add(&candidate[pos], &c);
            }
            let in_span = well_formed
                && span_contains_with_forms(f, &block.ruling, &candidate, &rs.forms)?;
            Ok(ReferenceCheck {
                line: rel.line,
                index: rel.index,
                in_span,
            })
        })
        .collect()
}
