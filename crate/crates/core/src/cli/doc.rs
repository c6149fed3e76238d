//! The JSON input document.
//!
//! ```json
//! {
//!   "space": {"atoms": ["a", "b"]},
//!   "pseudo_mul": "times",
//!   "measures": {"nu": {"a": "3", "b": "1/2"}},
//!   "functions": {"f": {"a": "1", "b": "2"}},
//!   "ideals": {"I": [["a"]]}
//! }
//! ```
//!
//! Values are strings (`"3"`, `"1/2"`, `"0.25"`, `"inf"`); JSON numbers are
//! rejected so that nothing passes through binary floating point. Every
//! measure and function lists every atom.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Deserialize, Deserializer, MapAccess, SeqAccess, Visitor};
use serde_json::{json, Value};

use crate::arith::{ChainOp, PseudoMul};
use crate::ext::ExtNonneg;
use crate::measure::{MaxMeasure, MeasurableFn, SigmaIdeal, Space};

/// A validation error and where it was found, e.g. `measures.tau.b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// The pseudo-multiplication as written in a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpSpec {
    Times,
    Min,
    Chain { carrier: Vec<ExtNonneg>, table: Vec<Vec<ExtNonneg>>, identity: Option<ExtNonneg> },
}

impl OpSpec {
    pub fn build(&self) -> crate::Result<PseudoMul> {
        Ok(match self {
            OpSpec::Times => PseudoMul::StandardProduct,
            OpSpec::Min => PseudoMul::Minimum,
            OpSpec::Chain { carrier, table, identity } => {
                PseudoMul::Chain(ChainOp::new(carrier.clone(), table.clone(), identity.clone())?)
            }
        })
    }

    pub fn from_chain(chain: &ChainOp) -> Self {
        OpSpec::Chain { carrier: chain.carrier().to_vec(), table: chain.table(), identity: Some(chain.identity().clone()) }
    }

    pub fn to_json(&self) -> Value {
        let strs = |v: &[ExtNonneg]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        match self {
            OpSpec::Times => json!("times"),
            OpSpec::Min => json!("min"),
            OpSpec::Chain { carrier, table, identity } => {
                let mut chain = serde_json::Map::new();
                chain.insert("carrier".into(), json!(strs(carrier)));
                chain.insert("table".into(), json!(table.iter().map(|r| strs(r)).collect::<Vec<_>>()));
                if let Some(e) = identity {
                    chain.insert("identity".into(), json!(e.to_string()));
                }
                json!({ "chain": chain })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecDoc {
    pub space: Arc<Space>,
    pub pseudo_mul: OpSpec,
    pub measures: BTreeMap<String, MaxMeasure>,
    pub functions: BTreeMap<String, MeasurableFn>,
    /// Generator lists; see [`SpecDoc::ideal`].
    pub ideals: BTreeMap<String, Vec<Vec<String>>>,
}

impl SpecDoc {
    pub fn op(&self) -> crate::Result<PseudoMul> {
        self.pseudo_mul.build()
    }

    pub fn ideal(&self, name: &str) -> Option<SigmaIdeal> {
        let gens = self.ideals.get(name)?;
        let subsets = gens.iter().map(|g| self.space.subset(g.iter().map(String::as_str))).collect::<Result<Vec<_>, _>>();
        SigmaIdeal::generated_by(self.space.clone(), subsets.ok()?).ok()
    }

    /// Canonical JSON text; [`parse_spec`] reads it back to an equal document.
    pub fn render(&self) -> String {
        let table = |values: &[ExtNonneg]| {
            let mut m = serde_json::Map::new();
            for (a, v) in self.space.atoms().iter().zip(values) {
                m.insert(a.clone(), json!(v.to_string()));
            }
            Value::Object(m)
        };
        let mut doc = serde_json::Map::new();
        doc.insert("space".into(), json!({ "atoms": self.space.atoms() }));
        doc.insert("pseudo_mul".into(), self.pseudo_mul.to_json());
        doc.insert(
            "measures".into(),
            Value::Object(self.measures.iter().map(|(k, m)| (k.clone(), table(m.masses()))).collect()),
        );
        doc.insert(
            "functions".into(),
            Value::Object(self.functions.iter().map(|(k, f)| (k.clone(), table(f.values()))).collect()),
        );
        doc.insert("ideals".into(), Value::Object(self.ideals.iter().map(|(k, g)| (k.clone(), json!(g))).collect()));
        serde_json::to_string_pretty(&Value::Object(doc)).expect("document serializes")
    }
}

/// JSON kept as written: object keys in order, duplicates included.
#[derive(Debug, Clone, PartialEq)]
enum Node {
    Null,
    Bool(bool),
    Number(String),
    Str(String),
    Array(Vec<Node>),
    Object(Vec<(String, Node)>),
}

impl Node {
    fn kind(&self) -> &'static str {
        match self {
            Node::Null => "null",
            Node::Bool(_) => "a boolean",
            Node::Number(_) => "a number",
            Node::Str(_) => "a string",
            Node::Array(_) => "an array",
            Node::Object(_) => "an object",
        }
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NodeVisitor;

        impl<'de> Visitor<'de> for NodeVisitor {
            type Value = Node;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a JSON value")
            }
            fn visit_unit<E>(self) -> Result<Node, E> {
                Ok(Node::Null)
            }
            fn visit_bool<E>(self, b: bool) -> Result<Node, E> {
                Ok(Node::Bool(b))
            }
            fn visit_u64<E>(self, n: u64) -> Result<Node, E> {
                Ok(Node::Number(n.to_string()))
            }
            fn visit_i64<E>(self, n: i64) -> Result<Node, E> {
                Ok(Node::Number(n.to_string()))
            }
            fn visit_f64<E>(self, n: f64) -> Result<Node, E> {
                Ok(Node::Number(n.to_string()))
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Node, E> {
                Ok(Node::Str(s.to_owned()))
            }
            fn visit_string<E>(self, s: String) -> Result<Node, E> {
                Ok(Node::Str(s))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Node, A::Error> {
                let mut out = Vec::new();
                while let Some(n) = seq.next_element()? {
                    out.push(n);
                }
                Ok(Node::Array(out))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Node, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, Node>()? {
                    out.push((k, v));
                }
                Ok(Node::Object(out))
            }
        }

        deserializer.deserialize_any(NodeVisitor)
    }
}

struct Ctx {
    errors: Vec<SpecError>,
}

impl Ctx {
    fn err(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.errors.push(SpecError { path: path.into(), message: message.into() });
    }

    fn object<'n>(&mut self, path: &str, node: &'n Node) -> Option<&'n [(String, Node)]> {
        match node {
            Node::Object(entries) => {
                let mut seen = std::collections::HashSet::new();
                for (k, _) in entries {
                    if !seen.insert(k.as_str()) {
                        self.err(join(path, k), "duplicate name");
                    }
                }
                Some(entries)
            }
            other => {
                self.err(path, format!("expected an object, found {}", other.kind()));
                None
            }
        }
    }

    fn array<'n>(&mut self, path: &str, node: &'n Node) -> Option<&'n [Node]> {
        match node {
            Node::Array(items) => Some(items),
            other => {
                self.err(path, format!("expected an array, found {}", other.kind()));
                None
            }
        }
    }

    fn string<'n>(&mut self, path: &str, node: &'n Node) -> Option<&'n str> {
        match node {
            Node::Str(s) => Some(s),
            Node::Number(n) => {
                self.err(path, format!("expected a string, found the number {n}; write values as strings such as \"{n}\""));
                None
            }
            other => {
                self.err(path, format!("expected a string, found {}", other.kind()));
                None
            }
        }
    }

    fn value(&mut self, path: &str, node: &Node) -> Option<ExtNonneg> {
        let s = self.string(path, node)?;
        match s.parse::<ExtNonneg>() {
            Ok(v) => Some(v),
            Err(e) => {
                self.err(path, format!("`{s}`: {e}"));
                None
            }
        }
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_owned()
    } else {
        format!("{path}.{key}")
    }
}

fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

fn lookup<'n>(entries: &'n [(String, Node)], key: &str) -> Option<&'n Node> {
    entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
}

fn read_json(text: &str) -> Result<Node, Vec<SpecError>> {
    serde_json::from_str::<Node>(text)
        .map_err(|e| vec![SpecError { path: "$".into(), message: format!("malformed JSON: {e}") }])
}

/// Parses and validates a document, reporting every error found.
pub fn parse_spec(text: &str) -> Result<SpecDoc, Vec<SpecError>> {
    let root = read_json(text)?;
    let mut cx = Ctx { errors: Vec::new() };
    let Some(top) = cx.object("$", &root) else {
        return Err(cx.errors);
    };
    for (k, _) in top {
        if !matches!(k.as_str(), "space" | "pseudo_mul" | "measures" | "functions" | "ideals") {
            cx.err(k.as_str(), "unknown field");
        }
    }

    let space = match lookup(top, "space") {
        None => {
            cx.err("space", "missing");
            None
        }
        Some(node) => read_space(&mut cx, node),
    };
    let pseudo_mul = match lookup(top, "pseudo_mul") {
        None => {
            cx.err("pseudo_mul", "missing");
            None
        }
        Some(node) => read_op(&mut cx, "pseudo_mul", node),
    };
    let Some(space) = space else {
        return Err(cx.errors);
    };

    let mut measures = BTreeMap::new();
    for (name, values) in read_tables(&mut cx, top, "measures", &space) {
        if let Ok(m) = MaxMeasure::new(space.clone(), values) {
            measures.insert(name, m);
        }
    }
    let mut functions = BTreeMap::new();
    for (name, values) in read_tables(&mut cx, top, "functions", &space) {
        if let Ok(f) = MeasurableFn::new(space.clone(), values) {
            functions.insert(name, f);
        }
    }
    let mut ideals = BTreeMap::new();
    if let Some(node) = lookup(top, "ideals") {
        if let Some(entries) = cx.object("ideals", node) {
            for (name, gens) in entries {
                let path = join("ideals", name);
                let Some(items) = cx.array(&path, gens) else { continue };
                let mut out = Vec::new();
                for (i, g) in items.iter().enumerate() {
                    let gpath = index(&path, i);
                    let Some(atoms) = cx.array(&gpath, g) else { continue };
                    let mut set = Vec::new();
                    for (j, a) in atoms.iter().enumerate() {
                        let apath = index(&gpath, j);
                        let Some(a) = cx.string(&apath, a) else { continue };
                        if space.index_of(a).is_none() {
                            cx.err(apath, format!("unknown atom `{a}`"));
                        } else if set.iter().any(|s| s == a) {
                            cx.err(apath, format!("atom `{a}` repeated"));
                        } else {
                            set.push(a.to_owned());
                        }
                    }
                    out.push(set);
                }
                ideals.insert(name.clone(), out);
            }
        }
    }

    match (cx.errors.is_empty(), pseudo_mul) {
        (true, Some(pseudo_mul)) => Ok(SpecDoc { space, pseudo_mul, measures, functions, ideals }),
        _ => Err(cx.errors),
    }
}

/// Parses a pseudo-multiplication on its own: `"times"`, `"min"` or a
/// `{"chain": ...}` object.
pub fn parse_pseudo_mul(text: &str) -> Result<OpSpec, Vec<SpecError>> {
    let root = read_json(text)?;
    let mut cx = Ctx { errors: Vec::new() };
    match read_op(&mut cx, "pseudo_mul", &root) {
        Some(op) if cx.errors.is_empty() => Ok(op),
        _ => Err(cx.errors),
    }
}

fn read_space(cx: &mut Ctx, node: &Node) -> Option<Arc<Space>> {
    let entries = cx.object("space", node)?;
    for (k, _) in entries {
        if k != "atoms" {
            cx.err(join("space", k), "unknown field");
        }
    }
    let Some(atoms) = lookup(entries, "atoms") else {
        cx.err("space.atoms", "missing");
        return None;
    };
    let items = cx.array("space.atoms", atoms)?;
    let mut labels: Vec<String> = Vec::new();
    let before = cx.errors.len();
    for (i, a) in items.iter().enumerate() {
        let path = index("space.atoms", i);
        let Some(s) = cx.string(&path, a) else { continue };
        if s.is_empty() {
            cx.err(path, "empty atom name");
        } else if labels.iter().any(|l| l == s) {
            cx.err(path, format!("duplicate atom `{s}`"));
        } else {
            labels.push(s.to_owned());
        }
    }
    if cx.errors.len() > before {
        return None;
    }
    match Space::new(labels) {
        Ok(space) => Some(space),
        Err(e) => {
            cx.err("space.atoms", e.to_string());
            None
        }
    }
}

fn read_op(cx: &mut Ctx, path: &str, node: &Node) -> Option<OpSpec> {
    match node {
        Node::Str(s) => match s.as_str() {
            "times" => Some(OpSpec::Times),
            "min" => Some(OpSpec::Min),
            other => {
                cx.err(path, format!("unknown pseudo-multiplication `{other}`; expected \"times\", \"min\" or a chain"));
                None
            }
        },
        Node::Object(_) => {
            let entries = cx.object(path, node)?;
            let (key, body) = match entries {
                [(k, v)] => (k, v),
                _ => {
                    cx.err(path, "expected exactly one key, `chain`");
                    return None;
                }
            };
            if key != "chain" {
                cx.err(join(path, key), "unknown pseudo-multiplication");
                return None;
            }
            read_chain(cx, &join(path, "chain"), body)
        }
        other => {
            cx.err(path, format!("expected a name or a chain object, found {}", other.kind()));
            None
        }
    }
}

fn read_chain(cx: &mut Ctx, path: &str, node: &Node) -> Option<OpSpec> {
    let entries = cx.object(path, node)?;
    for (k, _) in entries {
        if !matches!(k.as_str(), "carrier" | "table" | "identity") {
            cx.err(join(path, k), "unknown field");
        }
    }
    let before = cx.errors.len();
    let values = |cx: &mut Ctx, p: &str, n: &Node| -> Option<Vec<ExtNonneg>> {
        let items = cx.array(p, n)?;
        let out: Vec<Option<ExtNonneg>> = items.iter().enumerate().map(|(i, v)| cx.value(&index(p, i), v)).collect();
        out.into_iter().collect()
    };
    let cpath = join(path, "carrier");
    let carrier = match lookup(entries, "carrier") {
        Some(n) => values(cx, &cpath, n),
        None => {
            cx.err(&cpath, "missing");
            None
        }
    };
    let tpath = join(path, "table");
    let mut table = Vec::new();
    match lookup(entries, "table") {
        Some(n) => {
            if let Some(rows) = cx.array(&tpath, n) {
                for (i, row) in rows.iter().enumerate() {
                    let rpath = index(&tpath, i);
                    if let Some(r) = values(cx, &rpath, row) {
                        if let Some(c) = &carrier {
                            if r.len() != c.len() {
                                cx.err(&rpath, format!("expected {} entries, found {}", c.len(), r.len()));
                            }
                            for (j, v) in r.iter().enumerate() {
                                if !c.contains(v) {
                                    cx.err(index(&rpath, j), format!("{v} is not in the carrier"));
                                }
                            }
                        }
                        table.push(r);
                    }
                }
                if let Some(c) = &carrier {
                    if rows.len() != c.len() {
                        cx.err(&tpath, format!("expected {} rows, found {}", c.len(), rows.len()));
                    }
                }
            }
        }
        None => cx.err(&tpath, "missing"),
    }
    let identity = lookup(entries, "identity").and_then(|n| cx.value(&join(path, "identity"), n));
    if cx.errors.len() > before {
        return None;
    }
    let spec = OpSpec::Chain { carrier: carrier?, table, identity };
    match spec.build() {
        Ok(_) => Some(spec),
        Err(e) => {
            cx.err(path, e.to_string());
            None
        }
    }
}

fn read_tables(cx: &mut Ctx, top: &[(String, Node)], field: &str, space: &Space) -> Vec<(String, Vec<ExtNonneg>)> {
    let Some(node) = lookup(top, field) else {
        return Vec::new();
    };
    let Some(entries) = cx.object(field, node) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut names = std::collections::HashSet::new();
    for (name, body) in entries {
        if !names.insert(name.as_str()) {
            continue;
        }
        let path = join(field, name);
        let Some(cells) = cx.object(&path, body) else { continue };
        let mut values: Vec<Option<ExtNonneg>> = vec![None; space.len()];
        let mut ok = true;
        for (atom, v) in cells {
            let vpath = join(&path, atom);
            match space.index_of(atom) {
                None => {
                    cx.err(vpath, format!("unknown atom `{atom}`"));
                    ok = false;
                }
                Some(i) => match cx.value(&vpath, v) {
                    Some(x) => values[i] = Some(x),
                    None => ok = false,
                },
            }
        }
        for (i, v) in values.iter().enumerate() {
            if v.is_none() && cells.iter().all(|(a, _)| a != &space.atoms()[i]) {
                cx.err(join(&path, &space.atoms()[i]), "missing; every atom needs a value");
                ok = false;
            }
        }
        if ok {
            out.push((name.clone(), values.into_iter().map(Option::unwrap).collect()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"space": {"atoms": ["a"]}, "pseudo_mul": "times", "measures": {"nu": {"a": "1"}}}"#;

    fn paths(text: &str) -> Vec<String> {
        parse_spec(text).unwrap_err().into_iter().map(|e| e.path).collect()
    }

    #[test]
    fn minimal_document() {
        let doc = parse_spec(MINIMAL).unwrap();
        assert_eq!(doc.space.atoms(), &["a"]);
        assert_eq!(doc.pseudo_mul, OpSpec::Times);
        assert_eq!(doc.measures["nu"].masses(), &["1".parse::<ExtNonneg>().unwrap()]);
    }

    #[test]
    fn negative_mass_is_located() {
        let errs = parse_spec(r#"{"space": {"atoms": ["a"]}, "pseudo_mul": "times", "measures": {"nu": {"a": "-1"}}}"#)
            .unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].path, "measures.nu.a");
    }

    #[test]
    fn chain_arity_is_located() {
        let text = r#"{"space": {"atoms": ["a"]},
            "pseudo_mul": {"chain": {"carrier": ["0", "1"], "table": [["0", "0"], ["0"]]}}}"#;
        assert_eq!(paths(text), vec!["pseudo_mul.chain.table[1]"]);
    }

    #[test]
    fn assorted_errors() {
        assert_eq!(paths(r#"{"space": {"atoms": ["a"]}, "pseudo_mul": "sum"}"#), vec!["pseudo_mul"]);
        assert_eq!(paths(r#"{"space": {"atoms": ["a", "a"]}, "pseudo_mul": "min"}"#), vec!["space.atoms[1]"]);
        assert_eq!(
            paths(r#"{"space": {"atoms": ["a"]}, "pseudo_mul": "min", "measures": {"m": {"a": "1"}, "m": {"a": "2"}}}"#),
            vec!["measures.m"]
        );
        assert_eq!(
            paths(r#"{"space": {"atoms": ["a", "b"]}, "pseudo_mul": "min", "functions": {"f": {"a": 1}}}"#),
            vec!["functions.f.a", "functions.f.b"]
        );
        assert_eq!(
            paths(r#"{"space": {"atoms": ["a"]}, "pseudo_mul": "min", "ideals": {"I": [["z"]]}}"#),
            vec!["ideals.I[0][0]"]
        );
        assert_eq!(paths("{"), vec!["$"]);
        assert_eq!(paths("[]"), vec!["$"]);
    }

    #[test]
    fn render_roundtrip() {
        let text = r#"{
            "space": {"atoms": ["a", "b"]},
            "pseudo_mul": {"chain": {"carrier": ["0", "1", "2", "inf"],
                "table": [["0","0","0","0"],["0","1","2","inf"],["0","2","2","inf"],["0","inf","inf","inf"]]}},
            "measures": {"tau": {"a": "2", "b": "0"}},
            "functions": {"c": {"a": "inf", "b": "1"}},
            "ideals": {"I": [["a"], []]}
        }"#;
        let doc = parse_spec(text).unwrap();
        assert_eq!(parse_spec(&doc.render()).unwrap(), doc);
        assert!(doc.ideal("I").unwrap().contains(doc.space.subset(["a"]).unwrap()));
        assert!(matches!(doc.op().unwrap(), PseudoMul::Chain(_)));
    }

    #[test]
    fn standalone_pseudo_mul() {
        assert_eq!(parse_pseudo_mul(r#""min""#).unwrap(), OpSpec::Min);
        assert!(parse_pseudo_mul(r#"{"chain": {"carrier": ["1"], "table": [["1"]]}}"#).is_err());
    }
}
