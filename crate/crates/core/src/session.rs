//! Session files: a ring declaration, named systems and modules, and command
//! statements.
//!
//! ```text
//! ring Q[d];
//! system S = [[d, -1]] vars x, u;   # rows are equations
//! module M = coker [[d, 0], [0, 1]];  # rows are relations
//! analyze S;
//! hom M, M;
//! ```

use std::fmt;
use std::str::FromStr;

use crate::control::ControlSystem;
use crate::error::{Error, Result};
use crate::lexer::{Cursor, Tok, Token};
use crate::module::FPModule;
use crate::poly::{poly_expr, Poly, Ring, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Torsion,
    Defect,
    Hom,
    Verify,
    Gb,
}

impl CommandKind {
    pub const ALL: [CommandKind; 6] = [
        CommandKind::Analyze,
        CommandKind::Torsion,
        CommandKind::Defect,
        CommandKind::Hom,
        CommandKind::Verify,
        CommandKind::Gb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Analyze => "analyze",
            CommandKind::Torsion => "torsion",
            CommandKind::Defect => "defect",
            CommandKind::Hom => "hom",
            CommandKind::Verify => "verify",
            CommandKind::Gb => "gb",
        }
    }

    /// Allowed argument counts.
    fn arity(self) -> std::ops::RangeInclusive<usize> {
        match self {
            CommandKind::Hom => 2..=2,
            CommandKind::Verify => 0..=usize::MAX,
            _ => 1..=1,
        }
    }
}

impl FromStr for CommandKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CommandKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown command `{s}`"),
            })
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Binding {
    System(ControlSystem),
    Module(FPModule),
}

impl Binding {
    /// The module a name denotes: itself, or a system's Malgrange module.
    pub fn module(&self) -> Result<FPModule> {
        match self {
            Binding::Module(m) => Ok(m.clone()),
            Binding::System(s) => crate::control::malgrange_module(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandStmt {
    pub kind: CommandKind,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    ring: Ring,
    bindings: Vec<(String, Binding)>,
    commands: Vec<CommandStmt>,
}

const KEYWORDS: [&str; 5] = ["ring", "system", "module", "coker", "vars"];

impl Session {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn bindings(&self) -> &[(String, Binding)] {
        &self.bindings
    }

    pub fn commands(&self) -> &[CommandStmt] {
        &self.commands
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.iter().find(|(n, _)| n == name).map(|(_, b)| b)
    }

    pub fn parse(text: &str) -> Result<Session> {
        let mut cur = Cursor::new(text)?;
        let ring = ring_decl(&mut cur)?;
        let mut s = Session {
            ring,
            bindings: Vec::new(),
            commands: Vec::new(),
        };
        while *cur.peek_tok() != Tok::Eof {
            s.statement(&mut cur)?;
        }
        Ok(s)
    }

    fn statement(&mut self, cur: &mut Cursor) -> Result<()> {
        let (word, at) = cur.expect_ident()?;
        match word.as_str() {
            "system" | "module" => {
                let (name, name_at) = cur.expect_ident()?;
                if KEYWORDS.contains(&name.as_str()) || name.parse::<CommandKind>().is_ok() {
                    return Err(cur.error_at(&name_at, format!("`{name}` is reserved")));
                }
                if self.get(&name).is_some() {
                    return Err(cur.error_at(&name_at, format!("`{name}` is already bound")));
                }
                cur.expect(&Tok::Eq)?;
                let b = if word == "system" {
                    self.system_body(cur)?
                } else {
                    cur.expect_keyword("coker")?;
                    self.module_body(cur)?
                };
                cur.expect(&Tok::Semi)?;
                self.bindings.push((name, b));
            }
            _ => {
                let kind: CommandKind = word
                    .parse()
                    .map_err(|_| cur.error_at(&at, format!("unknown statement `{word}`")))?;
                let mut args = Vec::new();
                if *cur.peek_tok() != Tok::Semi {
                    loop {
                        let (n, n_at) = cur.expect_ident()?;
                        if self.get(&n).is_none() {
                            return Err(cur.error_at(&n_at, format!("unknown identifier `{n}`")));
                        }
                        args.push(n);
                        if !cur.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                if !kind.arity().contains(&args.len()) {
                    return Err(cur.error_at(
                        &at,
                        format!("`{kind}` takes {} argument(s), found {}", arity_text(kind), args.len()),
                    ));
                }
                cur.expect(&Tok::Semi)?;
                self.commands.push(CommandStmt { kind, args });
            }
        }
        Ok(())
    }

    fn system_body(&self, cur: &mut Cursor) -> Result<Binding> {
        let start = cur.peek().clone();
        let rows = matrix(cur, &self.ring)?;
        cur.expect_keyword("vars")?;
        let mut unknowns: Vec<(String, Token)> = vec![cur.expect_ident()?];
        while cur.eat(&Tok::Comma) {
            unknowns.push(cur.expect_ident()?);
        }
        for (i, (u, t)) in unknowns.iter().enumerate() {
            if unknowns[..i].iter().any(|(v, _)| v == u) {
                return Err(cur.error_at(t, format!("duplicate unknown `{u}`")));
            }
        }
        if rows.is_empty() {
            return Err(cur.error_at(&start, "a system needs at least one equation"));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != unknowns.len()) {
            return Err(cur.error_at(
                &start,
                format!("equation has {} coefficients for {} unknowns", bad.len(), unknowns.len()),
            ));
        }
        let names: Vec<String> = unknowns.into_iter().map(|(u, _)| u).collect();
        Ok(Binding::System(ControlSystem::new(&self.ring, &names, &rows)?))
    }

    fn module_body(&self, cur: &mut Cursor) -> Result<Binding> {
        let rows = matrix(cur, &self.ring)?;
        let ngens = rows.first().map_or(0, |r| r.len());
        Ok(Binding::Module(FPModule::from_relation_rows(&self.ring, ngens, &rows)?))
    }
}

fn arity_text(kind: CommandKind) -> String {
    let a = kind.arity();
    if *a.end() == usize::MAX {
        format!("at least {}", a.start())
    } else {
        a.start().to_string()
    }
}

fn ring_decl(cur: &mut Cursor) -> Result<Ring> {
    cur.expect_keyword("ring")?;
    cur.expect_keyword("Q")?;
    let open = cur.expect(&Tok::LBracket)?;
    if *cur.peek_tok() == Tok::RBracket {
        return Err(cur.error_at(&open, "empty variable list"));
    }
    let mut names: Vec<(String, Token)> = vec![cur.expect_ident()?];
    while cur.eat(&Tok::Comma) {
        names.push(cur.expect_ident()?);
    }
    cur.expect(&Tok::RBracket)?;
    cur.expect(&Tok::Semi)?;
    for (i, (n, t)) in names.iter().enumerate() {
        if names[..i].iter().any(|(m, _)| m == n) {
            return Err(cur.error_at(t, format!("duplicate variable `{n}`")));
        }
    }
    let names: Vec<&str> = names.iter().map(|(n, _)| n.as_str()).collect();
    RingSpec::new(&names)
}

/// `[]`, or `[[p, ...], ...]` with rows of equal length.
fn matrix(cur: &mut Cursor, ring: &Ring) -> Result<Vec<Vec<Poly>>> {
    cur.expect(&Tok::LBracket)?;
    let mut rows = Vec::new();
    if cur.eat(&Tok::RBracket) {
        return Ok(rows);
    }
    loop {
        let start = cur.expect(&Tok::LBracket)?;
        let mut row = vec![poly_expr(cur, ring)?];
        while cur.eat(&Tok::Comma) {
            row.push(poly_expr(cur, ring)?);
        }
        cur.expect(&Tok::RBracket)?;
        if let Some(first) = rows.first() {
            let first: &Vec<Poly> = first;
            if first.len() != row.len() {
                return Err(cur.error_at(
                    &start,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    cur.expect(&Tok::RBracket)?;
    Ok(rows)
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.ring)?;
        for (name, b) in &self.bindings {
            match b {
                Binding::System(s) => writeln!(f, "system {name} = {s};")?,
                Binding::Module(m) => writeln!(f, "module {name} = {m};")?,
            }
        }
        for c in &self.commands {
            if c.args.is_empty() {
                writeln!(f, "{};", c.kind)?;
            } else {
                writeln!(f, "{} {};", c.kind, c.args.join(", "))?;
            }
        }
        Ok(())
    }
}
