//! JSON, GAP and plain-text renderings of presentations.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Presentation, PresentationError, PresentationName};
use crate::words::{GeneratorSymbol, Sign, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Gap,
    Txt,
}

impl ExportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(ExportFormat::Json),
            "gap" => Some(ExportFormat::Gap),
            "txt" => Some(ExportFormat::Txt),
            _ => None,
        }
    }

    pub fn render(self, p: &Presentation) -> String {
        match self {
            ExportFormat::Json => to_json(p),
            ExportFormat::Gap => to_gap(p),
            ExportFormat::Txt => to_txt(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub n: u32,
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        PresentationJson {
            n: p.n,
            name: p.name.to_string(),
            generators: p.generators.iter().map(GeneratorSymbol::token).collect(),
            relators: p.relators.iter().map(Word::tokens).collect(),
        }
    }
}

pub fn to_json(p: &Presentation) -> String {
    serde_json::to_string_pretty(&PresentationJson::from(p)).expect("plain data serializes")
}

pub fn from_json(text: &str) -> Result<Presentation, PresentationError> {
    let raw: PresentationJson =
        serde_json::from_str(text).map_err(|e| PresentationError::Format(e.to_string()))?;
    let name = PresentationName::parse(&raw.name)
        .ok_or_else(|| PresentationError::Format(format!("unknown presentation name `{}`", raw.name)))?;
    if raw.n == 0 {
        return Err(PresentationError::InvalidN);
    }
    let generators = raw
        .generators
        .iter()
        .map(|t| GeneratorSymbol::parse(t, raw.n))
        .collect::<Result<Vec<_>, _>>()?;
    let relators = raw
        .relators
        .iter()
        .map(|r| Word::from_tokens(r, raw.n))
        .collect::<Result<Vec<_>, _>>()?;
    Presentation::new(raw.n, name, generators, relators)
}

fn gap_word(w: &Word) -> String {
    if w.is_empty() {
        return "One(F)".to_string();
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .map(|l| match l.sign {
            Sign::Pos => l.symbol.token(),
            Sign::Neg => format!("{}^-1", l.symbol.token()),
        })
        .collect();
    parts.join("*")
}

pub fn to_gap(p: &Presentation) -> String {
    let mut out = String::new();
    let names: Vec<String> = p.generators.iter().map(|g| format!("\"{}\"", g.token())).collect();
    writeln!(out, "# {} (n = {})", p.name, p.n).unwrap();
    writeln!(out, "F := FreeGroup({});;", names.join(", ")).unwrap();
    for (idx, g) in p.generators.iter().enumerate() {
        writeln!(out, "{} := F.{};;", g.token(), idx + 1).unwrap();
    }
    if p.relators.is_empty() {
        writeln!(out, "G := F / [ ];").unwrap();
    } else {
        writeln!(out, "G := F / [").unwrap();
        let rels: Vec<String> = p.relators.iter().map(|r| format!("  {}", gap_word(r))).collect();
        writeln!(out, "{}", rels.join(",\n")).unwrap();
        writeln!(out, "];").unwrap();
    }
    out
}

pub fn to_txt(p: &Presentation) -> String {
    let mut out = String::new();
    writeln!(out, "{} (n = {})", p.name, p.n).unwrap();
    let gens: Vec<String> = p.generators.iter().map(GeneratorSymbol::token).collect();
    writeln!(out, "generators ({}): {}", gens.len(), gens.join(" ")).unwrap();
    writeln!(out, "relators ({} distinct, {} generated):", p.relators.len(), p.raw_relator_count)
        .unwrap();
    for r in &p.relators {
        writeln!(out, "  {r}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build, main_presentation};

    #[test]
    fn json_round_trip() {
        for name in [PresentationName::Main, PresentationName::UInftyMinusX, PresentationName::U0MinusY] {
            for n in 1..=4 {
                let p = build(name, n).unwrap();
                let q = from_json(&to_json(&p)).unwrap();
                assert_eq!(p.n, q.n);
                assert_eq!(p.name, q.name);
                assert_eq!(p.generators, q.generators);
                assert_eq!(p.relators, q.relators);
            }
        }
    }

    #[test]
    fn gap_is_deterministic() {
        let p = main_presentation(3).unwrap();
        assert_eq!(to_gap(&p), to_gap(&main_presentation(3).unwrap()));
        assert!(to_gap(&p).contains("F := FreeGroup(\"g0\""));
    }

    #[test]
    fn bad_json() {
        assert!(from_json("{").is_err());
        assert!(from_json(r#"{"n":2,"name":"nope","generators":[],"relators":[]}"#).is_err());
        assert!(from_json(r#"{"n":2,"name":"main","generators":["g0"],"relators":[["g1"]]}"#).is_err());
    }
}
