//! Line-based RCL netlists and their modified nodal analysis (MNA) data.
//!
//! ```text
//! # comment
//! R <name> <n1> <n2> <value>
//! C <name> <n1> <n2> <value>
//! L <name> <n1> <n2> <value>
//! K <name> <L1> <L2> <value>      mutual inductance in henry
//! I <name> <n+> <n-> PORT <k>
//! ```
//!
//! Node `0` is the datum. Values take plain or scientific notation with an
//! optional SI suffix (`f p n u m k meg g`).

mod mna;

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use mna::{assemble_mna, mna_to_first_order, mna_to_second_order, MnaData};

pub const DATUM: &str = "0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ElementKind {
    R,
    C,
    L,
    K,
    I,
}

impl ElementKind {
    fn from_token(tok: &str) -> Option<Self> {
        match tok.to_ascii_uppercase().as_str() {
            "R" => Some(ElementKind::R),
            "C" => Some(ElementKind::C),
            "L" => Some(ElementKind::L),
            "K" => Some(ElementKind::K),
            "I" => Some(ElementKind::I),
            _ => None,
        }
    }

    fn letter(self) -> char {
        match self {
            ElementKind::R => 'R',
            ElementKind::C => 'C',
            ElementKind::L => 'L',
            ElementKind::K => 'K',
            ElementKind::I => 'I',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub kind: ElementKind,
    pub name: String,
    /// Node names, or for `K` the names of the two coupled inductors.
    pub terminals: [String; 2],
    /// Ohm, farad or henry; for `I` the port index.
    pub value: f64,
}

impl Element {
    pub fn port(&self) -> Option<usize> {
        (self.kind == ElementKind::I).then_some(self.value as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Netlist {
    /// Non-datum nodes in order of first appearance.
    nodes: Vec<String>,
    elements: Vec<Element>,
    num_ports: usize,
}

impl Netlist {
    /// Validates and builds a netlist from element records.
    pub fn new(elements: Vec<Element>) -> Result<Self> {
        let mut names: HashSet<(ElementKind, &str)> = HashSet::new();
        let mut nodes: Vec<String> = Vec::new();
        let mut seen_nodes: HashSet<&str> = HashSet::new();
        let mut inductors: HashSet<&str> = HashSet::new();
        let mut ports = Vec::new();

        for el in &elements {
            if !names.insert((el.kind, el.name.as_str())) {
                return Err(Error::Validation(format!(
                    "duplicate {} element name '{}'",
                    el.kind.letter(),
                    el.name
                )));
            }
            if el.kind == ElementKind::L {
                inductors.insert(el.name.as_str());
            }
        }

        for el in &elements {
            let [a, b] = &el.terminals;
            if a == b {
                return Err(Error::Validation(format!(
                    "element '{}' connects '{}' to itself",
                    el.name, a
                )));
            }
            match el.kind {
                ElementKind::K => {
                    for t in [a, b] {
                        if !inductors.contains(t.as_str()) {
                            return Err(Error::Validation(format!(
                                "coupling '{}' references unknown inductor '{}'",
                                el.name, t
                            )));
                        }
                    }
                }
                _ => {
                    for t in [a, b] {
                        if t != DATUM && seen_nodes.insert(t.as_str()) {
                            nodes.push(t.clone());
                        }
                    }
                }
            }
            match el.kind {
                ElementKind::I => {
                    if !(el.value >= 1.0 && el.value.fract() == 0.0) {
                        return Err(Error::Validation(format!(
                            "source '{}' has invalid port index {}",
                            el.name, el.value
                        )));
                    }
                    ports.push(el.value as usize);
                }
                _ => {
                    if !(el.value.is_finite() && el.value > 0.0) {
                        return Err(Error::Validation(format!(
                            "element '{}' has non-positive value {}",
                            el.name, el.value
                        )));
                    }
                }
            }
        }

        ports.sort_unstable();
        if ports.is_empty() {
            return Err(Error::Validation("netlist has no current-source ports".into()));
        }
        for (i, &p) in ports.iter().enumerate() {
            if p != i + 1 {
                return Err(Error::Validation(format!(
                    "ports must be numbered 1..{} without gaps or duplicates",
                    ports.len()
                )));
            }
        }

        Ok(Netlist {
            nodes,
            elements,
            num_ports: ports.len(),
        })
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn elements_of(&self, kind: ElementKind) -> impl Iterator<Item = &Element> {
        self.elements.iter().filter(move |e| e.kind == kind)
    }

    pub fn num_ports(&self) -> usize {
        self.num_ports
    }

    /// Column of each non-datum node in the incidence matrices.
    pub fn node_index(&self) -> HashMap<&str, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for el in &self.elements {
            let [a, b] = &el.terminals;
            match el.kind {
                ElementKind::I => writeln!(f, "I {} {} {} PORT {}", el.name, a, b, el.value as usize)?,
                k => writeln!(f, "{} {} {} {} {:e}", k.letter(), el.name, a, b, el.value)?,
            }
        }
        Ok(())
    }
}

/// Parses a value with optional SI suffix, e.g. `2.5p`, `1meg`, `1e-9`.
pub fn parse_value(tok: &str) -> Option<f64> {
    const SUFFIXES: [(&str, f64); 8] = [
        ("meg", 1e6),
        ("f", 1e-15),
        ("p", 1e-12),
        ("n", 1e-9),
        ("u", 1e-6),
        ("m", 1e-3),
        ("k", 1e3),
        ("g", 1e9),
    ];
    let finite = |x: f64| x.is_finite().then_some(x);
    let lower = tok.to_ascii_lowercase();
    if lower.starts_with(|c: char| c.is_ascii_digit() || c == '.' || c == '-' || c == '+') {
        if let Ok(x) = lower.parse::<f64>() {
            return finite(x);
        }
        for (suffix, scale) in SUFFIXES {
            if let Some(mantissa) = lower.strip_suffix(suffix) {
                return mantissa.parse::<f64>().ok().and_then(|x| finite(x * scale));
            }
        }
    }
    None
}

pub fn parse_netlist(text: &str) -> Result<Netlist> {
    let mut elements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let perr = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let kind = ElementKind::from_token(toks[0])
            .ok_or_else(|| perr(format!("unknown element kind '{}'", toks[0])))?;
        let value = match kind {
            ElementKind::I => {
                if toks.len() != 6 || !toks[4].eq_ignore_ascii_case("PORT") {
                    return Err(perr("expected 'I <name> <n+> <n-> PORT <k>'".into()));
                }
                toks[5]
                    .parse::<usize>()
                    .map_err(|_| perr(format!("invalid port index '{}'", toks[5])))? as f64
            }
            _ => {
                if toks.len() != 5 {
                    return Err(perr(format!(
                        "expected '{} <name> <a> <b> <value>'",
                        kind.letter()
                    )));
                }
                parse_value(toks[4]).ok_or_else(|| perr(format!("invalid value '{}'", toks[4])))?
            }
        };
        elements.push(Element {
            kind,
            name: toks[1].to_string(),
            terminals: [toks[2].to_string(), toks[3].to_string()],
            value,
        });
    }
    Netlist::new(elements)
}
