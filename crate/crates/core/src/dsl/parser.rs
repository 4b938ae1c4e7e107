// Statement parsers bail out with one diagnostic; they are not on a hot path.
#![allow(clippy::result_large_err)]

use std::collections::HashMap;

use super::lexer::{tokenize, Token, TokenKind};
use crate::diagnostic::{codes, has_errors, Diagnostic};
use crate::model::*;

/// Outcome of [`parse`]. `model` is present iff there are no error
/// diagnostics.
#[derive(Debug, Clone)]
pub struct ParseResult {
    pub model: Option<Model>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseResult {
    pub fn is_ok(&self) -> bool {
        self.model.is_some()
    }

    /// The model, or the diagnostics when parsing failed.
    pub fn into_result(self) -> Result<Model, Vec<Diagnostic>> {
        self.model.ok_or(self.diagnostics)
    }
}

/// Parses a `.phase` document. Never panics; malformed statements are
/// reported and skipped so later statements still get checked.
pub fn parse(text: &str, filename: &str) -> ParseResult {
    let tokens = tokenize(text);
    let mut parser = Parser {
        file: filename,
        model: Model::new(),
        diagnostics: Vec::new(),
        declared: HashMap::new(),
        saw_header: false,
    };
    for statement in tokens.split(|t| t.kind == TokenKind::Newline) {
        if statement.is_empty() {
            continue;
        }
        if let Err(diagnostic) = parser.statement(statement) {
            parser.diagnostics.push(diagnostic);
        }
    }
    parser.finish()
}

struct Parser<'f> {
    file: &'f str,
    model: Model,
    diagnostics: Vec<Diagnostic>,
    declared: HashMap<ElementRef, Span>,
    saw_header: bool,
}

#[derive(Debug)]
enum Value {
    Word(String),
    Str(String),
    List(Vec<String>),
}

impl Value {
    fn describe(&self) -> &'static str {
        match self {
            Value::Word(_) => "a keyword or identifier",
            Value::Str(_) => "a string",
            Value::List(_) => "a list",
        }
    }
}

struct Attr {
    value: Value,
    value_span: Span,
}

/// The parsed shape of one statement before it is typed.
struct Statement<'k> {
    keyword: &'k str,
    span: Span,
    id: Option<Ident>,
    text: Option<String>,
    attrs: HashMap<String, Attr>,
}

/// Attribute schema: key name and whether it is required.
type Schema = &'static [(&'static str, bool)];

impl Parser<'_> {
    fn span(&self, tok: &Token) -> Span {
        Span::new(self.file, tok.line, tok.column)
    }

    fn syntax(&self, tok: &Token, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(codes::SYNTAX, message, Some(self.span(tok)))
    }

    fn statement(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        if let Some(tok) = tokens.iter().find(|t| matches!(t.kind, TokenKind::Error(_))) {
            let TokenKind::Error(message) = &tok.kind else { unreachable!() };
            return Err(Diagnostic::error(codes::LEXICAL, message.clone(), Some(self.span(tok))));
        }
        let head = &tokens[0];
        let TokenKind::Word(keyword) = &head.kind else {
            return Err(self.syntax(head, "expected a statement keyword"));
        };
        match keyword.as_str() {
            "model" => self.header(tokens),
            "loss" => self.loss(tokens),
            "boundary" => self.boundary(tokens),
            "hazard" => self.hazard(tokens),
            "node" => self.node(tokens),
            "action" => self.edge(tokens, EdgeKind::ControlAction),
            "feedback" => self.edge(tokens, EdgeKind::Feedback),
            "iolink" => self.edge(tokens, EdgeKind::IoLink),
            "uca" => self.uca(tokens),
            "scenario" => self.scenario(tokens),
            "requirement" => self.requirement(tokens),
            "assess" => self.assessment(tokens),
            other => Err(self.syntax(head, format!("unknown statement `{other}`"))),
        }
    }

    fn header(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let name = match tokens.get(1).map(|t| &t.kind) {
            Some(TokenKind::Str(s)) => s.clone(),
            _ => return Err(self.syntax(tokens.get(1).unwrap_or(&tokens[0]), "expected a quoted model name after `model`")),
        };
        if let Some(extra) = tokens.get(2) {
            return Err(self.syntax(extra, "unexpected token after model name"));
        }
        if self.saw_header {
            return Err(self.syntax(&tokens[0], "duplicate `model` header"));
        }
        self.saw_header = true;
        self.model.name = Some(name);
        Ok(())
    }

    /// Splits a statement into id, bare string and `key=value` attributes,
    /// checking keys against `schema` and whether the bare string is
    /// expected.
    fn shape<'k>(
        &self,
        tokens: &'k [Token],
        with_id: bool,
        text_required: bool,
        schema: Schema,
    ) -> Result<Statement<'k>, Diagnostic> {
        let head = &tokens[0];
        let TokenKind::Word(keyword) = &head.kind else { unreachable!() };
        let mut pos = 1;
        let mut id = None;
        if with_id {
            match (tokens.get(1).map(|t| &t.kind), tokens.get(2).map(|t| &t.kind)) {
                (Some(TokenKind::Word(w)), next) if next != Some(&TokenKind::Eq) => {
                    id = Some(Ident::new(w.clone()).map_err(|e| self.syntax(&tokens[1], e.to_string()))?);
                    pos = 2;
                }
                _ => {
                    let at = tokens.get(1).unwrap_or(head);
                    return Err(self.syntax(at, format!("expected an identifier after `{keyword}`")));
                }
            }
        }

        let mut text: Option<String> = None;
        let mut attrs: HashMap<String, Attr> = HashMap::new();
        while pos < tokens.len() {
            let tok = &tokens[pos];
            match &tok.kind {
                TokenKind::Str(s) => {
                    if !text_required {
                        return Err(self.syntax(tok, format!("`{keyword}` takes no bare string; use a key=\"...\" attribute")));
                    }
                    if text.is_some() {
                        return Err(self.syntax(tok, "more than one bare string in statement"));
                    }
                    text = Some(s.clone());
                    pos += 1;
                }
                TokenKind::Word(key) if tokens.get(pos + 1).map(|t| &t.kind) == Some(&TokenKind::Eq) => {
                    if !schema.iter().any(|(k, _)| k == key) {
                        return Err(self.syntax(tok, format!("unknown attribute `{key}` for `{keyword}`")));
                    }
                    if attrs.contains_key(key) {
                        return Err(self.syntax(tok, format!("duplicate attribute `{key}`")));
                    }
                    let value_tok = tokens
                        .get(pos + 2)
                        .ok_or_else(|| self.syntax(&tokens[pos + 1], format!("missing value for `{key}`")))?;
                    let (value, next) = self.value(tokens, pos + 2)?;
                    attrs.insert(
                        key.clone(),
                        Attr {
                            value,
                            value_span: self.span(value_tok),
                        },
                    );
                    pos = next;
                }
                TokenKind::Word(w) => {
                    return Err(self.syntax(tok, format!("unexpected `{w}`; expected key=value")));
                }
                _ => return Err(self.syntax(tok, "unexpected token")),
            }
        }

        if text_required && text.is_none() {
            return Err(self.syntax(head, format!("`{keyword}` requires a quoted description")));
        }
        if let Some((key, _)) = schema.iter().find(|(k, req)| *req && !attrs.contains_key(*k)) {
            return Err(self.syntax(head, format!("`{keyword}` requires `{key}=`")));
        }
        Ok(Statement {
            keyword,
            span: self.span(head),
            id,
            text,
            attrs,
        })
    }

    fn value(&self, tokens: &[Token], pos: usize) -> Result<(Value, usize), Diagnostic> {
        let tok = &tokens[pos];
        match &tok.kind {
            TokenKind::Word(w) => Ok((Value::Word(w.clone()), pos + 1)),
            TokenKind::Str(s) => Ok((Value::Str(s.clone()), pos + 1)),
            TokenKind::LBracket => {
                let mut items = Vec::new();
                let mut pos = pos + 1;
                if let Some(Token { kind: TokenKind::RBracket, .. }) = tokens.get(pos) {
                    return Ok((Value::List(items), pos + 1));
                }
                loop {
                    match tokens.get(pos) {
                        Some(Token { kind: TokenKind::Word(w), .. }) => items.push(w.clone()),
                        Some(other) => return Err(self.syntax(other, "expected an identifier in list")),
                        None => return Err(self.syntax(tok, "unterminated list")),
                    }
                    pos += 1;
                    match tokens.get(pos) {
                        Some(Token { kind: TokenKind::Comma, .. }) => pos += 1,
                        Some(Token { kind: TokenKind::RBracket, .. }) => return Ok((Value::List(items), pos + 1)),
                        Some(other) => return Err(self.syntax(other, "expected `,` or `]` in list")),
                        None => return Err(self.syntax(tok, "unterminated list")),
                    }
                }
            }
            _ => Err(self.syntax(tok, "expected a value")),
        }
    }

    fn declare(&mut self, class: ElementClass, id: &Ident, span: &Span) -> Result<(), Diagnostic> {
        let key = ElementRef::new(class, id.as_str());
        if let Some(first) = self.declared.get(&key) {
            return Err(Diagnostic::error(
                codes::DUPLICATE_ID,
                format!("duplicate {class} id `{id}`"),
                Some(span.clone()),
            )
            .with_related(Some(first.clone()))
            .with_subject(key));
        }
        self.declared.insert(key.clone(), span.clone());
        self.model.spans.insert(key, span.clone());
        Ok(())
    }

    fn loss(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("category", true)])?;
        let category = take_enum(&mut st, "category", LossCategory::from_keyword, LossCategory::expected)?.unwrap();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Loss, &id, &st.span)?;
        self.model.losses.push(Loss {
            id,
            description: st.text.take().unwrap(),
            category,
        });
        Ok(())
    }

    fn boundary(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("stage", false), ("includes", false)])?;
        let stage = take_enum(&mut st, "stage", Stage::from_keyword, Stage::expected)?;
        let includes = take_list(&mut st, "includes")?.unwrap_or_default();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Boundary, &id, &st.span)?;
        self.model.boundaries.push(SystemBoundary {
            id,
            name: st.text.take().unwrap(),
            stage,
            includes,
        });
        Ok(())
    }

    fn hazard(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("boundary", true), ("leads_to", true)])?;
        let boundary = take_ident(&mut st, "boundary")?.unwrap();
        let leads_to = take_list(&mut st, "leads_to")?.unwrap();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Hazard, &id, &st.span)?;
        self.model.hazards.push(Hazard {
            id,
            description: st.text.take().unwrap(),
            boundary,
            leads_to,
        });
        Ok(())
    }

    fn node(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(
            tokens,
            true,
            true,
            &[("kind", true), ("process_model", false), ("control_algorithm", false)],
        )?;
        let kind = take_enum(&mut st, "kind", NodeKind::from_keyword, NodeKind::expected)?.unwrap();
        let process_model = take_str(&mut st, "process_model")?;
        let control_algorithm = take_str(&mut st, "control_algorithm")?;
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Node, &id, &st.span)?;
        self.model.nodes.push(Node {
            id,
            name: st.text.take().unwrap(),
            kind,
            process_model,
            control_algorithm,
        });
        Ok(())
    }

    fn edge(&mut self, tokens: &[Token], kind: EdgeKind) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("from", true), ("to", true)])?;
        let source = take_ident(&mut st, "from")?.unwrap();
        let target = take_ident(&mut st, "to")?.unwrap();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Edge, &id, &st.span)?;
        self.model.edges.push(Edge {
            id,
            kind,
            source,
            target,
            label: st.text.take().unwrap(),
        });
        Ok(())
    }

    fn uca(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(
            tokens,
            true,
            false,
            &[
                ("action", true),
                ("type", true),
                ("category", true),
                ("context", true),
                ("hazards", true),
                ("source", false),
            ],
        )?;
        let action = take_ident(&mut st, "action")?.unwrap();
        let guide_type = take_enum(&mut st, "type", GuideType::from_keyword, GuideType::expected)?.unwrap();
        let category = take_enum(&mut st, "category", UcaCategory::from_keyword, UcaCategory::expected)?.unwrap();
        let context = take_str(&mut st, "context")?.unwrap();
        let hazards = take_list(&mut st, "hazards")?.unwrap();
        let source = take_ident(&mut st, "source")?;
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Uca, &id, &st.span)?;
        self.model.ucas.push(Uca {
            id,
            source,
            action,
            guide_type,
            category,
            context,
            hazards,
        });
        Ok(())
    }

    fn scenario(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("uca", true), ("class", true), ("elements", false)])?;
        let uca = take_ident(&mut st, "uca")?.unwrap();
        let class = take_enum(&mut st, "class", ScenarioClass::from_keyword, ScenarioClass::expected)?.unwrap();
        let elements = take_list(&mut st, "elements")?.unwrap_or_default();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Scenario, &id, &st.span)?;
        self.model.scenarios.push(LossScenario {
            id,
            uca,
            class,
            description: st.text.take().unwrap(),
            elements,
        });
        Ok(())
    }

    fn requirement(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(tokens, true, true, &[("scenarios", true)])?;
        let scenarios = take_list(&mut st, "scenarios")?.unwrap();
        let id = st.id.take().unwrap();
        self.declare(ElementClass::Requirement, &id, &st.span)?;
        self.model.requirements.push(SafetyRequirement {
            id,
            scenarios,
            text: st.text.take().unwrap(),
        });
        Ok(())
    }

    fn assessment(&mut self, tokens: &[Token]) -> Result<(), Diagnostic> {
        let mut st = self.shape(
            tokens,
            false,
            false,
            &[("action", true), ("type", true), ("verdict", true), ("rationale", true)],
        )?;
        let action = take_ident(&mut st, "action")?.unwrap();
        let guide_type = take_enum(&mut st, "type", GuideType::from_keyword, GuideType::expected)?.unwrap();
        let verdict = take_enum(&mut st, "verdict", Verdict::from_keyword, Verdict::expected)?.unwrap();
        let rationale = take_str(&mut st, "rationale")?.unwrap();
        self.model.spans.push_assessment(st.span.clone());
        self.model.assessments.push(Assessment {
            action,
            guide_type,
            verdict,
            rationale,
        });
        Ok(())
    }

    fn finish(mut self) -> ParseResult {
        let sources: HashMap<String, Ident> = self
            .model
            .edges
            .iter()
            .map(|e| (e.id.to_string(), e.source.clone()))
            .collect();
        for uca in &mut self.model.ucas {
            if uca.source.is_none() {
                uca.source = sources.get(uca.action.as_str()).cloned();
            }
        }
        let model = if has_errors(&self.diagnostics) {
            None
        } else {
            Some(self.model)
        };
        ParseResult {
            model,
            diagnostics: self.diagnostics,
        }
    }
}

fn type_error(st: &Statement<'_>, key: &str, attr: &Attr, expected: &str) -> Diagnostic {
    Diagnostic::error(
        codes::SYNTAX,
        format!(
            "`{}` attribute `{key}` expects {expected}, found {}",
            st.keyword,
            attr.value.describe()
        ),
        Some(attr.value_span.clone()),
    )
}

fn take_enum<T>(
    st: &mut Statement<'_>,
    key: &str,
    from_keyword: fn(&str) -> Option<T>,
    expected: fn() -> String,
) -> Result<Option<T>, Diagnostic> {
    let Some(attr) = st.attrs.remove(key) else { return Ok(None) };
    match &attr.value {
        Value::Word(w) => from_keyword(w).map(Some).ok_or_else(|| {
            Diagnostic::error(
                codes::INVALID_ENUM,
                format!("invalid value `{w}` for `{key}`; expected one of {}", expected()),
                Some(attr.value_span.clone()),
            )
        }),
        _ => Err(type_error(st, key, &attr, "a keyword")),
    }
}

fn take_ident(st: &mut Statement<'_>, key: &str) -> Result<Option<Ident>, Diagnostic> {
    let Some(attr) = st.attrs.remove(key) else { return Ok(None) };
    match &attr.value {
        Value::Word(w) => Ident::new(w.clone())
            .map(Some)
            .map_err(|e| Diagnostic::error(codes::SYNTAX, e.to_string(), Some(attr.value_span.clone()))),
        _ => Err(type_error(st, key, &attr, "an identifier")),
    }
}

fn take_str(st: &mut Statement<'_>, key: &str) -> Result<Option<String>, Diagnostic> {
    let Some(attr) = st.attrs.remove(key) else { return Ok(None) };
    match attr.value {
        Value::Str(s) => Ok(Some(s)),
        _ => Err(type_error(st, key, &attr, "a quoted string")),
    }
}

fn take_list(st: &mut Statement<'_>, key: &str) -> Result<Option<Vec<Ident>>, Diagnostic> {
    let Some(attr) = st.attrs.remove(key) else { return Ok(None) };
    match &attr.value {
        Value::List(items) => items
            .iter()
            .map(|w| {
                Ident::new(w.clone())
                    .map_err(|e| Diagnostic::error(codes::SYNTAX, e.to_string(), Some(attr.value_span.clone())))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
        _ => Err(type_error(st, key, &attr, "a list `[a,b]`")),
    }
}
