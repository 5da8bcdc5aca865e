//! Recursive-descent parser and printer for the model DSL.
//!
//! Grammar:
//!
//! ```text
//! index  := "Atom" NAME | "FinSet" INT
//!         | "Sum(" index "," index ")" | "Prod(" index "," index ")"
//! subset := "Fin{" ints "}" | "Cofin{" ints "}"
//!         | "Pair(" subset "," subset ")" | "Rect(" subset "," subset ")"
//!         | "Graph(" INT ")" | "Union(" subset {"," subset} ")"
//! family := "FIN" | "FULL" | "POLAR(" family ")"
//!         | "SUMFAM(" family "," family ")" | "RECT(" family "," family ")"
//! ```
//!
//! `Graph(k; e1, e2, …)` with an excluded list is accepted as well so that
//! every internal subset (intersections can carve finitely many points out
//! of a diagonal) prints and re-parses exactly.

use std::fmt;

use refcalc_core::index::{DescribedSubset, IndexTerm, ProdComponent};
use refcalc_core::scalar::{FieldElem, FieldTag, Poly, RingTag};
use refcalc_core::support::GeneratorFamily;

/// A parse failure with byte offset and line/column, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(text: &str, offset: usize, message: String) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for (i, ch) in text.char_indices() {
            if i >= offset {
                break;
            }
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        ParseError { offset, line, col, message }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {} (line {}, column {}): {}",
            self.offset, self.line, self.col, self.message
        )
    }
}

pub struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str) -> Parser<'a> {
        Parser { text, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.text, self.pos, message.into()))
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        while self.rest().starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.text.len()
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            self.error("trailing input")
        }
    }

    fn peek_char(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected `{token}`"))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek_char()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            self.pos += 1;
        }
        if self.pos == start {
            self.error("expected an identifier")
        } else {
            Ok(self.text[start..self.pos].to_owned())
        }
    }

    pub fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek_char() == Some('-') {
            self.pos += 1;
        }
        while self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse::<i64>()
            .or_else(|_| self.error("expected an integer"))
    }

    pub fn natural(&mut self) -> Result<u64, ParseError> {
        let n = self.integer()?;
        if n < 0 {
            self.error("expected a nonnegative integer")
        } else {
            Ok(n as u64)
        }
    }

    fn int_list(&mut self, close: char) -> Result<Vec<u64>, ParseError> {
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek_char() == Some(close) {
            return Ok(out);
        }
        loop {
            out.push(self.natural()?);
            if !self.eat(",") {
                return Ok(out);
            }
        }
    }

    pub fn index_term(&mut self) -> Result<IndexTerm, ParseError> {
        self.skip_ws();
        if self.eat("Atom") {
            let name = self.ident()?;
            Ok(IndexTerm::Atom(name))
        } else if self.eat("FinSet") {
            Ok(IndexTerm::FinSet(self.natural()?))
        } else if self.eat("Sum(") {
            let l = self.index_term()?;
            self.expect(",")?;
            let r = self.index_term()?;
            self.expect(")")?;
            Ok(IndexTerm::sum(l, r))
        } else if self.eat("Prod(") {
            let l = self.index_term()?;
            self.expect(",")?;
            let r = self.index_term()?;
            self.expect(")")?;
            Ok(IndexTerm::prod(l, r))
        } else {
            self.error("expected an index term (Atom, FinSet, Sum, Prod)")
        }
    }

    pub fn subset(&mut self) -> Result<DescribedSubset, ParseError> {
        self.skip_ws();
        if self.eat("Fin{") {
            let xs = self.int_list('}')?;
            self.expect("}")?;
            Ok(DescribedSubset::finite(xs))
        } else if self.eat("Cofin{") {
            let xs = self.int_list('}')?;
            self.expect("}")?;
            Ok(DescribedSubset::cofinite(xs))
        } else if self.eat("Pair(") {
            let a = self.subset()?;
            self.expect(",")?;
            let b = self.subset()?;
            self.expect(")")?;
            Ok(DescribedSubset::pair(a, b))
        } else if self.eat("Rect(") {
            let a = self.subset()?;
            self.expect(",")?;
            let b = self.subset()?;
            self.expect(")")?;
            Ok(DescribedSubset::rect(a, b))
        } else if self.eat("Graph(") {
            let k = self.integer()?;
            let excluded = if self.eat(";") { self.int_list(')')? } else { Vec::new() };
            self.expect(")")?;
            Ok(DescribedSubset::union(vec![ProdComponent::graph(k, excluded)]))
        } else if self.eat("Union(") {
            let mut components = Vec::new();
            self.skip_ws();
            if !self.eat(")") {
                loop {
                    let part = self.subset()?;
                    match part {
                        DescribedSubset::Union(cs) => components.extend(cs),
                        _ => {
                            return self
                                .error("Union takes product subsets (Rect, Graph, Union)")
                        }
                    }
                    if self.eat(")") {
                        break;
                    }
                    self.expect(",")?;
                }
            }
            Ok(DescribedSubset::union(components))
        } else {
            self.error("expected a subset (Fin, Cofin, Pair, Rect, Graph, Union)")
        }
    }

    pub fn family(&mut self) -> Result<GeneratorFamily, ParseError> {
        self.skip_ws();
        if self.eat("FIN") {
            Ok(GeneratorFamily::Fin)
        } else if self.eat("FULL") {
            Ok(GeneratorFamily::Full)
        } else if self.eat("POLAR(") {
            let g = self.family()?;
            self.expect(")")?;
            Ok(GeneratorFamily::polar(g))
        } else if self.eat("SUMFAM(") {
            let a = self.family()?;
            self.expect(",")?;
            let b = self.family()?;
            self.expect(")")?;
            Ok(GeneratorFamily::sumfam(a, b))
        } else if self.eat("RECT(") {
            let a = self.family()?;
            self.expect(",")?;
            let b = self.family()?;
            self.expect(")")?;
            Ok(GeneratorFamily::rect(a, b))
        } else {
            self.error("expected a family (FIN, FULL, POLAR, SUMFAM, RECT)")
        }
    }

    pub fn ring_tag(&mut self) -> Result<RingTag, ParseError> {
        self.skip_ws();
        if self.eat("FpDual:") {
            Ok(RingTag::DualFp(self.natural()?))
        } else if self.eat("Fp:") {
            Ok(RingTag::Fp(self.natural()?))
        } else if self.eat("Z") {
            Ok(RingTag::Int)
        } else if self.eat("Q") {
            Ok(RingTag::Rat)
        } else {
            self.error("expected a ring tag (Z, Q, Fp:<p>, FpDual:<p>)")
        }
    }

    pub fn field_tag(&mut self) -> Result<FieldTag, ParseError> {
        self.skip_ws();
        if self.eat("Fp:") {
            Ok(FieldTag::Fp(self.natural()?))
        } else if self.eat("Q") {
            Ok(FieldTag::Q)
        } else {
            self.error("expected a field tag (Q, Fp:<p>)")
        }
    }

    /// Polynomial in `x` with integer or `a/b` coefficients, e.g.
    /// `x^2 - x - 1` or `x^2 + 1/2`.
    pub fn poly(&mut self, field: FieldTag) -> Result<Poly, ParseError> {
        let mut coeffs: Vec<(usize, FieldElem)> = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = 1i64;
            if self.eat("+") {
                // explicit plus
            } else if self.eat("-") {
                sign = -1;
            } else if !first {
                break;
            }
            first = false;
            self.skip_ws();
            // coefficient / monomial forms: c, c*x^k, c x^k, x^k, x.
            let mut coeff =
                if self.peek_char().is_some_and(|c| c.is_ascii_digit()) {
                    let num = self.natural()? as i64;
                    if self.eat("/") {
                        let den = self.natural()? as i64;
                        FieldElem::parse(&format!("{}/{den}", sign * num), field)
                            .ok_or(())
                            .or_else(|_| self.error("bad coefficient"))?
                    } else {
                        FieldElem::from_i64(sign * num, field)
                    }
                } else {
                    FieldElem::from_i64(sign, field)
                };
            self.eat("*");
            let power = if self.eat("x") {
                if self.eat("^") {
                    self.natural()? as usize
                } else {
                    1
                }
            } else {
                0
            };
            if power == 0 && coeff.is_zero() {
                coeff = FieldElem::zero(field);
            }
            coeffs.push((power, coeff));
        }
        if coeffs.is_empty() {
            return self.error("expected a polynomial");
        }
        let deg = coeffs.iter().map(|(p, _)| *p).max().unwrap_or(0);
        let mut out = vec![FieldElem::zero(field); deg + 1];
        for (p, c) in coeffs {
            out[p] = out[p].add(&c).expect("same field");
        }
        Ok(Poly::new(field, out))
    }
}

pub fn parse_index_term(text: &str) -> Result<IndexTerm, ParseError> {
    let mut p = Parser::new(text);
    let t = p.index_term()?;
    p.expect_end()?;
    Ok(t)
}

pub fn parse_subset(text: &str) -> Result<DescribedSubset, ParseError> {
    let mut p = Parser::new(text);
    let s = p.subset()?;
    p.expect_end()?;
    Ok(s)
}

pub fn parse_family(text: &str) -> Result<GeneratorFamily, ParseError> {
    let mut p = Parser::new(text);
    let f = p.family()?;
    p.expect_end()?;
    Ok(f)
}

pub fn parse_ring_tag(text: &str) -> Result<RingTag, ParseError> {
    let mut p = Parser::new(text);
    let r = p.ring_tag()?;
    p.expect_end()?;
    Ok(r)
}

/// Renders a subset in the DSL syntax; `parse_subset` inverts this exactly.
pub fn subset_to_dsl(d: &DescribedSubset) -> String {
    fn ints(v: &[u64]) -> String {
        v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
    }
    fn component(c: &ProdComponent) -> String {
        match c {
            ProdComponent::Rect(a, b) => format!("Rect({}, {})", subset_to_dsl(a), subset_to_dsl(b)),
            ProdComponent::Graph { offset, excluded } => {
                if excluded.is_empty() {
                    format!("Graph({offset})")
                } else {
                    format!("Graph({offset}; {})", ints(excluded))
                }
            }
        }
    }
    match d {
        DescribedSubset::Finite(v) => format!("Fin{{{}}}", ints(v)),
        DescribedSubset::Cofinite(v) => format!("Cofin{{{}}}", ints(v)),
        DescribedSubset::Pair(a, b) => {
            format!("Pair({}, {})", subset_to_dsl(a), subset_to_dsl(b))
        }
        DescribedSubset::Union(cs) => match cs.len() {
            1 => component(&cs[0]),
            _ => format!(
                "Union({})",
                cs.iter().map(component).collect::<Vec<_>>().join(", ")
            ),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_index_examples() {
        assert_eq!(
            parse_index_term("Sum(Atom A, FinSet 3)").unwrap(),
            IndexTerm::sum(IndexTerm::atom("A"), IndexTerm::FinSet(3))
        );
        assert_eq!(
            parse_index_term("Prod(Atom A, Atom A)").unwrap(),
            IndexTerm::prod(IndexTerm::atom("A"), IndexTerm::atom("A"))
        );
    }

    #[test]
    fn truncated_term_reports_offset() {
        let err = parse_index_term("Prod(Atom A,").unwrap_err();
        assert_eq!(err.offset, 12);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn index_round_trips_through_display() {
        for text in [
            "Atom A",
            "FinSet 0",
            "Sum(Atom A, FinSet 3)",
            "Prod(Sum(Atom A, Atom B), Atom C)",
        ] {
            let t = parse_index_term(text).unwrap();
            assert_eq!(parse_index_term(&t.to_string()).unwrap(), t);
            assert_eq!(t.to_string(), text);
        }
    }

    #[test]
    fn subset_round_trips() {
        for text in [
            "Fin{1, 2, 3}",
            "Cofin{}",
            "Pair(Fin{0}, Cofin{5})",
            "Rect(Fin{1}, Cofin{})",
            "Graph(-2)",
            "Graph(3; 4, 5)",
            "Union(Rect(Fin{1}, Fin{2}), Graph(0))",
            "Union()",
        ] {
            let s = parse_subset(text).unwrap();
            assert_eq!(parse_subset(&subset_to_dsl(&s)).unwrap(), s);
        }
    }

    #[test]
    fn family_round_trips() {
        for text in [
            "FIN",
            "FULL",
            "POLAR(RECT(FIN, FULL))",
            "SUMFAM(POLAR(FULL), FIN)",
        ] {
            let f = parse_family(text).unwrap();
            assert_eq!(parse_family(&f.to_string()).unwrap(), f);
            assert_eq!(f.to_string(), text);
        }
    }

    #[test]
    fn poly_parsing() {
        let f = FieldTag::Q;
        let mut p = Parser::new("x^2 - x - 1");
        assert_eq!(p.poly(f).unwrap(), Poly::from_i64(f, &[-1, -1, 1]));
        let mut p = Parser::new("2*x + 1/2");
        let got = p.poly(f).unwrap();
        assert_eq!(got.coeff(1), FieldElem::from_i64(2, f));
        assert_eq!(got.coeff(0), FieldElem::rational(1, 2));
    }

    #[test]
    fn ring_tags() {
        assert_eq!(parse_ring_tag("Z").unwrap(), RingTag::Int);
        assert_eq!(parse_ring_tag("Fp:7").unwrap(), RingTag::Fp(7));
        assert_eq!(parse_ring_tag("FpDual:3").unwrap(), RingTag::DualFp(3));
    }
}
