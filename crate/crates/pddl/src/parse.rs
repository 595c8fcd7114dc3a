//! Recursive-descent parser for the PDDL fragment of the exploration domains.
//!
//! Identifiers are case-insensitive on input and lowercased in the AST.
//! `;` starts a comment that runs to end of line.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::ast::{
    ActionSchema, Atom, Condition, DomainFile, Literal, PredicateDecl, ProblemFile, Requirement,
    TypedName, ROOT_TYPE,
};

/// Source location, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("unsupported requirement {flag} at {pos}")]
    UnsupportedRequirement { pos: Pos, flag: String },
}

impl ParseError {
    fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }
}

// ---------------------------------------------------------------------------
// S-expressions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum SExpr {
    Sym(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    fn pos(&self) -> Pos {
        match self {
            SExpr::Sym(_, p) | SExpr::List(_, p) => *p,
        }
    }

    fn as_sym(&self) -> Result<&str, ParseError> {
        match self {
            SExpr::Sym(s, _) => Ok(s),
            SExpr::List(_, p) => Err(ParseError::syntax(*p, "expected a symbol, found a list")),
        }
    }

    fn as_list(&self) -> Result<&[SExpr], ParseError> {
        match self {
            SExpr::List(items, _) => Ok(items),
            SExpr::Sym(s, p) => Err(ParseError::syntax(
                *p,
                format!("expected a list, found `{}`", s),
            )),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    col: u32,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    /// Parse one s-expression.
    fn expr(&mut self) -> Result<SExpr, ParseError> {
        self.skip_trivia();
        let start = self.pos();
        match self.chars.peek() {
            None => Err(ParseError::syntax(start, "unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(ParseError::syntax(
                                self.pos(),
                                "unclosed parenthesis",
                            ))
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List(items, start));
                        }
                        Some(_) => items.push(self.expr()?),
                    }
                }
            }
            Some(')') => Err(ParseError::syntax(start, "unexpected `)`")),
            Some(_) => {
                let mut sym = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    sym.push(c);
                    self.bump();
                }
                Ok(SExpr::Sym(sym.to_lowercase(), start))
            }
        }
    }

    /// Parse exactly one top-level expression and require trailing trivia only.
    fn single(&mut self) -> Result<SExpr, ParseError> {
        let e = self.expr()?;
        self.skip_trivia();
        if self.chars.peek().is_some() {
            return Err(ParseError::syntax(
                self.pos(),
                "trailing input after top-level form",
            ));
        }
        Ok(e)
    }
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

fn expect_head<'e>(items: &'e [SExpr], head: &str, pos: Pos) -> Result<&'e [SExpr], ParseError> {
    match items.first() {
        Some(first) if first.as_sym().ok() == Some(head) => Ok(&items[1..]),
        _ => Err(ParseError::syntax(pos, format!("expected `({} ...)`", head))),
    }
}

fn ident(expr: &SExpr) -> Result<String, ParseError> {
    let s = expr.as_sym()?;
    let mut chars = s.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '-');
    if !ok {
        return Err(ParseError::syntax(
            expr.pos(),
            format!("invalid identifier `{}`", s),
        ));
    }
    Ok(s.to_string())
}

/// An identifier or a `?`-variable.
fn name_or_var(expr: &SExpr) -> Result<String, ParseError> {
    let s = expr.as_sym()?;
    match s.strip_prefix('?') {
        Some(rest) if !rest.is_empty() => Ok(s.to_string()),
        Some(_) => Err(ParseError::syntax(expr.pos(), "empty variable name")),
        None => ident(expr),
    }
}

/// `a b - t c d - u e` lists; trailing untyped names default to the root type.
fn typed_list(items: &[SExpr]) -> Result<Vec<TypedName>, ParseError> {
    let mut out = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut iter = items.iter().peekable();
    while let Some(item) = iter.next() {
        if item.as_sym().ok() == Some("-") {
            let typ = match iter.next() {
                Some(t) => ident(t)?,
                None => {
                    return Err(ParseError::syntax(item.pos(), "dangling `-` in typed list"))
                }
            };
            if pending.is_empty() {
                return Err(ParseError::syntax(item.pos(), "type with no names before it"));
            }
            out.extend(pending.drain(..).map(|name| TypedName { name, typ: typ.clone() }));
        } else {
            pending.push(name_or_var(item)?);
        }
    }
    out.extend(pending.drain(..).map(|name| TypedName {
        name,
        typ: ROOT_TYPE.to_string(),
    }));
    Ok(out)
}

fn term(expr: &SExpr) -> Result<String, ParseError> {
    let s = expr.as_sym()?;
    if let Some(rest) = s.strip_prefix('?') {
        if rest.is_empty() {
            return Err(ParseError::syntax(expr.pos(), "empty variable name"));
        }
        Ok(s.to_string())
    } else {
        ident(expr)
    }
}

fn atom(expr: &SExpr) -> Result<Atom, ParseError> {
    let items = expr.as_list()?;
    let head = items
        .first()
        .ok_or_else(|| ParseError::syntax(expr.pos(), "empty atom"))?;
    let predicate = ident(head)?;
    let args = items[1..].iter().map(term).collect::<Result<Vec<_>, _>>()?;
    Ok(Atom { predicate, args })
}

fn condition(expr: &SExpr) -> Result<Condition, ParseError> {
    let items = expr.as_list()?;
    match items.first().and_then(|h| h.as_sym().ok()) {
        Some("and") => Ok(Condition::And(
            items[1..].iter().map(condition).collect::<Result<_, _>>()?,
        )),
        Some("or") => Ok(Condition::Or(
            items[1..].iter().map(condition).collect::<Result<_, _>>()?,
        )),
        Some("not") => {
            if items.len() != 2 {
                return Err(ParseError::syntax(expr.pos(), "`not` takes one argument"));
            }
            // NNF over literals: negation applies to atoms only.
            Ok(Condition::Not(atom(&items[1])?))
        }
        _ => Ok(Condition::Atom(atom(expr)?)),
    }
}

fn effect_literals(expr: &SExpr) -> Result<Vec<Literal>, ParseError> {
    let items = expr.as_list()?;
    match items.first().and_then(|h| h.as_sym().ok()) {
        Some("and") => {
            let mut out = Vec::new();
            for item in &items[1..] {
                out.extend(effect_literals(item)?);
            }
            Ok(out)
        }
        Some("not") => {
            if items.len() != 2 {
                return Err(ParseError::syntax(expr.pos(), "`not` takes one argument"));
            }
            Ok(vec![Literal::neg(atom(&items[1])?)])
        }
        Some("or") => Err(ParseError::syntax(
            expr.pos(),
            "disjunction is not allowed in effects",
        )),
        _ => Ok(vec![Literal::pos(atom(expr)?)]),
    }
}

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

/// Parse a domain file.
pub fn parse_domain(text: &str) -> Result<DomainFile, ParseError> {
    let root = Lexer::new(text).single()?;
    let items = root.as_list()?;
    let rest = expect_head(items, "define", root.pos())?;

    let head = rest
        .first()
        .ok_or_else(|| ParseError::syntax(root.pos(), "missing `(domain ...)` header"))?;
    let head_items = head.as_list()?;
    let name_items = expect_head(head_items, "domain", head.pos())?;
    let name = match name_items {
        [n] => ident(n)?,
        _ => return Err(ParseError::syntax(head.pos(), "expected `(domain <name>)`")),
    };

    let mut domain = DomainFile {
        name,
        requirements: BTreeSet::new(),
        types: Vec::new(),
        predicates: Vec::new(),
        actions: Vec::new(),
    };
    let mut seen_actions = BTreeSet::new();

    for section in &rest[1..] {
        let sec_items = section.as_list()?;
        let head = sec_items
            .first()
            .ok_or_else(|| ParseError::syntax(section.pos(), "empty domain section"))?;
        match head.as_sym()? {
            ":requirements" => {
                for flag_expr in &sec_items[1..] {
                    let flag = flag_expr.as_sym()?;
                    match Requirement::from_flag(flag) {
                        Some(r) => {
                            domain.requirements.insert(r);
                        }
                        None => {
                            return Err(ParseError::UnsupportedRequirement {
                                pos: flag_expr.pos(),
                                flag: flag.to_string(),
                            })
                        }
                    }
                }
            }
            ":types" => {
                domain.types = typed_list(&sec_items[1..])?;
                for t in &domain.types {
                    if t.typ != ROOT_TYPE || t.name.starts_with('?') {
                        return Err(ParseError::syntax(
                            section.pos(),
                            format!("type `{}` must be a plain name under `{}`", t.name, ROOT_TYPE),
                        ));
                    }
                }
            }
            ":predicates" => {
                for decl in &sec_items[1..] {
                    let decl_items = decl.as_list()?;
                    let pname = ident(decl_items.first().ok_or_else(|| {
                        ParseError::syntax(decl.pos(), "empty predicate declaration")
                    })?)?;
                    let params = typed_list(&decl_items[1..])?;
                    for p in &params {
                        if !p.name.starts_with('?') {
                            return Err(ParseError::syntax(
                                decl.pos(),
                                format!("predicate parameter `{}` must be a variable", p.name),
                            ));
                        }
                    }
                    if domain.predicates.iter().any(|p| p.name == pname) {
                        return Err(ParseError::syntax(
                            decl.pos(),
                            format!("duplicate predicate `{}`", pname),
                        ));
                    }
                    domain.predicates.push(PredicateDecl {
                        name: pname,
                        params,
                    });
                }
            }
            ":action" => {
                let action = parse_action(sec_items, section.pos())?;
                if !seen_actions.insert(action.name.clone()) {
                    return Err(ParseError::syntax(
                        section.pos(),
                        format!("duplicate action `{}`", action.name),
                    ));
                }
                domain.actions.push(action);
            }
            other => {
                return Err(ParseError::syntax(
                    section.pos(),
                    format!("unsupported domain section `{}`", other),
                ))
            }
        }
    }

    for action in &domain.actions {
        check_action_vars(action)?;
    }
    Ok(domain)
}

fn parse_action(items: &[SExpr], pos: Pos) -> Result<ActionSchema, ParseError> {
    let name = ident(
        items
            .get(1)
            .ok_or_else(|| ParseError::syntax(pos, "action missing name"))?,
    )?;
    let mut parameters = Vec::new();
    let mut precondition = Condition::top();
    let mut effects = Vec::new();
    let mut idx = 2;
    while idx < items.len() {
        let key = items[idx].as_sym()?;
        let value = items
            .get(idx + 1)
            .ok_or_else(|| ParseError::syntax(items[idx].pos(), format!("`{}` missing value", key)))?;
        match key {
            ":parameters" => {
                let raw = typed_list(value.as_list()?)?;
                for p in &raw {
                    if !p.name.starts_with('?') {
                        return Err(ParseError::syntax(
                            value.pos(),
                            format!("parameter `{}` must be a variable", p.name),
                        ));
                    }
                }
                parameters = raw;
            }
            ":precondition" => precondition = condition(value)?,
            ":effect" => effects = effect_literals(value)?,
            other => {
                return Err(ParseError::syntax(
                    items[idx].pos(),
                    format!("unsupported action field `{}`", other),
                ))
            }
        }
        idx += 2;
    }
    Ok(ActionSchema {
        name,
        parameters,
        precondition,
        effects,
    })
}

/// Every variable used by an action must be one of its parameters.
fn check_action_vars(action: &ActionSchema) -> Result<(), ParseError> {
    let declared: BTreeSet<&str> = action.parameters.iter().map(|p| p.name.as_str()).collect();
    let zero = Pos { line: 0, col: 0 };
    let used = action
        .precondition
        .atoms()
        .into_iter()
        .chain(action.effects.iter().map(|l| &l.atom));
    for a in used {
        for arg in &a.args {
            if arg.starts_with('?') && !declared.contains(arg.as_str()) {
                return Err(ParseError::syntax(
                    zero,
                    format!(
                        "action `{}` uses undeclared variable `{}`",
                        action.name, arg
                    ),
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Problem
// ---------------------------------------------------------------------------

/// Parse a problem file. No validation against any domain is performed.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let root = Lexer::new(text).single()?;
    let items = root.as_list()?;
    let rest = expect_head(items, "define", root.pos())?;

    let head = rest
        .first()
        .ok_or_else(|| ParseError::syntax(root.pos(), "missing `(problem ...)` header"))?;
    let head_items = head.as_list()?;
    let name_items = expect_head(head_items, "problem", head.pos())?;
    let name = match name_items {
        [n] => ident(n)?,
        _ => {
            return Err(ParseError::syntax(
                head.pos(),
                "expected `(problem <name>)`",
            ))
        }
    };

    let mut problem = ProblemFile::new(name, "");
    let mut saw_domain = false;

    for section in &rest[1..] {
        let sec_items = section.as_list()?;
        let head = sec_items
            .first()
            .ok_or_else(|| ParseError::syntax(section.pos(), "empty problem section"))?;
        match head.as_sym()? {
            ":domain" => {
                problem.domain = match &sec_items[1..] {
                    [n] => ident(n)?,
                    _ => {
                        return Err(ParseError::syntax(
                            section.pos(),
                            "expected `(:domain <name>)`",
                        ))
                    }
                };
                saw_domain = true;
            }
            ":objects" => {
                for obj in typed_list(&sec_items[1..])? {
                    if obj.name.starts_with('?') {
                        return Err(ParseError::syntax(
                            section.pos(),
                            format!("object `{}` must not be a variable", obj.name),
                        ));
                    }
                    match problem.objects.get(&obj.name) {
                        Some(t) if *t != obj.typ => {
                            return Err(ParseError::syntax(
                                section.pos(),
                                format!(
                                    "object `{}` declared as both `{}` and `{}`",
                                    obj.name, t, obj.typ
                                ),
                            ))
                        }
                        _ => {
                            problem.objects.insert(obj.name, obj.typ);
                        }
                    }
                }
            }
            ":init" => {
                // Set semantics: duplicate facts are deduplicated.
                for fact in &sec_items[1..] {
                    problem.init.insert(atom(fact)?);
                }
            }
            ":goal" => {
                let goal = match &sec_items[1..] {
                    [g] => condition(g)?,
                    _ => {
                        return Err(ParseError::syntax(
                            section.pos(),
                            "expected `(:goal <condition>)`",
                        ))
                    }
                };
                problem.goal = goal;
            }
            other => {
                return Err(ParseError::syntax(
                    section.pos(),
                    format!("unsupported problem section `{}`", other),
                ))
            }
        }
    }

    if !saw_domain {
        return Err(ParseError::syntax(root.pos(), "problem missing `(:domain ...)`"));
    }
    Ok(problem)
}

/// Parse a single object declaration line, `name - type`.
pub fn parse_object_line(line: &str) -> Result<TypedName, ParseError> {
    let wrapped = format!("({})", line);
    let root = Lexer::new(&wrapped).single()?;
    let items = root.as_list()?;
    let list = typed_list(items)?;
    match list.as_slice() {
        [one] if one.typ != ROOT_TYPE || line.contains('-') => Ok(one.clone()),
        _ => Err(ParseError::syntax(
            Pos { line: 1, col: 1 },
            format!("expected `name - type`, got `{}`", line.trim()),
        )),
    }
}

/// Parse a single ground atom line, `(pred a b ...)`.
pub fn parse_fact_line(line: &str) -> Result<Atom, ParseError> {
    let root = Lexer::new(line).single()?;
    let a = atom(&root)?;
    if !a.is_ground() {
        return Err(ParseError::syntax(
            root.pos(),
            format!("fact `{}` is not ground", a),
        ));
    }
    Ok(a)
}

/// Parse a ground goal condition written as a single s-expression.
pub fn parse_condition(text: &str) -> Result<Condition, ParseError> {
    let root = Lexer::new(text).single()?;
    condition(&root)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"
; a tiny domain
(define (domain mini)
  (:requirements :strips :typing)
  (:types location direction)
  (:predicates
    (at ?loc - location)
    (connected ?loc1 - location ?loc2 - location ?dir - direction)
  )
  (:action move
    :parameters (?loc1 - location ?loc2 - location ?dir - direction)
    :precondition (and (at ?loc1) (connected ?loc1 ?loc2 ?dir))
    :effect (and (not (at ?loc1)) (at ?loc2))
  )
)
"#;

    #[test]
    fn parses_minimal_domain() {
        let d = parse_domain(MINI).unwrap();
        assert_eq!(d.name, "mini");
        assert_eq!(d.actions.len(), 1);
        assert_eq!(d.predicates.len(), 2);
        assert_eq!(d.actions[0].effects.len(), 2);
        assert!(d.actions[0].effects[0].negated);
    }

    #[test]
    fn empty_domain_has_no_actions() {
        let d = parse_domain("(define (domain d))").unwrap();
        assert!(d.actions.is_empty());
        assert!(d.predicates.is_empty());
    }

    #[test]
    fn rejects_unsupported_requirement() {
        let err = parse_domain("(define (domain d) (:requirements :adl))").unwrap_err();
        assert!(matches!(err, ParseError::UnsupportedRequirement { .. }));
    }

    #[test]
    fn rejects_undeclared_action_variable() {
        let text = r#"
(define (domain d)
  (:predicates (p ?x - object))
  (:action a :parameters (?x - object) :effect (p ?y))
)
"#;
        assert!(parse_domain(text).is_err());
    }

    #[test]
    fn problem_with_empty_init() {
        let p = parse_problem("(define (problem p) (:domain d) (:init) (:goal (and)))").unwrap();
        assert!(p.init.is_empty());
        assert_eq!(p.goal, Condition::top());
    }

    #[test]
    fn duplicate_init_facts_dedup() {
        let p = parse_problem(
            "(define (problem p) (:domain d) (:objects a - t) (:init (q a) (q a)) (:goal (q a)))",
        )
        .unwrap();
        assert_eq!(p.init.len(), 1);
    }

    #[test]
    fn identifiers_lowercased() {
        let p = parse_problem(
            "(define (problem P) (:domain D) (:objects Kitchen - Location) (:init (At Kitchen)) (:goal (At Kitchen)))",
        )
        .unwrap();
        assert_eq!(p.name, "p");
        assert!(p.objects.contains_key("kitchen"));
        assert!(p.init.contains(&Atom::new("at", vec!["kitchen".into()])));
    }

    #[test]
    fn syntax_error_carries_location() {
        let err = parse_problem("(define (problem p)\n  (:domain d\n").unwrap_err();
        match err {
            ParseError::Syntax { pos, .. } => assert!(pos.line >= 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn object_and_fact_lines() {
        let o = parse_object_line("loc1 - location").unwrap();
        assert_eq!(o, TypedName::new("loc1", "location"));
        assert!(parse_object_line("loc1").is_err());
        let f = parse_fact_line("(connected kitchen loc1 south)").unwrap();
        assert_eq!(f.args.len(), 3);
        assert!(parse_fact_line("(at ?x)").is_err());
        assert!(parse_fact_line("(at").is_err());
    }
}
