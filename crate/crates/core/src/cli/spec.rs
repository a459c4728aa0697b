//! The JSON problem document: a flat object whose `kind` selects which of
//! the remaining fields are required.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CliError;

/// One contact tuple `(s_1, …, s_ℓ)`; entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ContactTuple(Vec<i64>);

impl TryFrom<Vec<i64>> for ContactTuple {
    type Error = String;

    fn try_from(v: Vec<i64>) -> Result<Self, String> {
        if v.contains(&0) {
            return Err("contact entries must be nonzero".into());
        }
        Ok(ContactTuple(v))
    }
}

impl From<ContactTuple> for Vec<i64> {
    fn from(t: ContactTuple) -> Vec<i64> {
        t.0
    }
}

impl ContactTuple {
    pub fn new(v: Vec<i64>) -> Result<Self, String> {
        v.try_into()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Deck,
    Psi,
    Convolve,
    Series,
    Verify,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Deck => "deck",
            Kind::Psi => "psi",
            Kind::Convolve => "convolve",
            Kind::Series => "series",
            Kind::Verify => "verify",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesName {
    G,
    #[serde(rename = "eta12")]
    Eta12,
    F,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Snf,
    Deck,
    Equivariance,
    Convolution,
    BryanLeung,
    Trr,
    Sympsum,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Snf,
        Suite::Deck,
        Suite::Equivariance,
        Suite::Convolution,
        Suite::BryanLeung,
        Suite::Trr,
        Suite::Sympsum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Snf => "snf",
            Suite::Deck => "deck",
            Suite::Equivariance => "equivariance",
            Suite::Convolution => "convolution",
            Suite::BryanLeung => "bryan-leung",
            Suite::Trr => "trr",
            Suite::Sympsum => "sympsum",
        }
    }
}

/// Contact data of a divisor: one tuple and one homology rank per component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<usize>>,
    pub s: Vec<ContactTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulesDoc {
    #[serde(rename = "H1")]
    pub h1: Vec<Vec<i64>>,
    #[serde(rename = "H2")]
    pub h2: Vec<Vec<i64>>,
    pub obu_h12: Vec<Vec<i64>>,
    pub ori_h12: Vec<Vec<i64>>,
    pub wt_h1: Vec<Vec<i64>>,
    pub wt_h2: Vec<Vec<i64>>,
    pub wt_h12: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusDoc {
    pub s1: ContactTuple,
    pub s2: ContactTuple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoversDoc {
    pub s_prime: ContactDoc,
    pub s: ContactDoc,
    pub s_dprime: ContactDoc,
    pub modules: ModulesDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub j1: usize,
    pub j2: usize,
    pub gamma: Vec<i64>,
    #[serde(default)]
    pub twist_prime: Vec<i64>,
    pub twist_dprime: Vec<i64>,
}

/// Contact data with the per-component ranks resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contact {
    pub ranks: Vec<usize>,
    pub s: Vec<ContactTuple>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeckProblem {
    pub contact: Contact,
    /// Generators of `H` as a row list; empty means `H = 0`.
    pub h: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiProblem {
    pub contact: Contact,
    pub h1: Vec<Vec<i64>>,
    pub h2: Vec<Vec<i64>>,
    pub h12: Vec<Vec<i64>>,
    pub inclusion: Option<Vec<Vec<i64>>>,
    pub j1: usize,
    pub j2: usize,
    pub gamma: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvolveSetup {
    Torus { s1: ContactTuple, s2: ContactTuple },
    General {
        s_prime: Contact,
        s: Contact,
        s_dprime: Contact,
        modules: ModulesDoc,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolveProblem {
    pub setup: ConvolveSetup,
    pub input: InputDoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesRequest {
    G,
    Eta12,
    F(u32),
    H,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemSpec {
    Deck(DeckProblem),
    Psi(PsiProblem),
    Convolve(ConvolveProblem),
    Series {
        series: SeriesRequest,
        order: Option<usize>,
    },
    Verify {
        suite: Suite,
        order: Option<usize>,
        trials: Option<usize>,
        seed: Option<u64>,
    },
}

impl ProblemSpec {
    pub fn kind(&self) -> Kind {
        match self {
            ProblemSpec::Deck(_) => Kind::Deck,
            ProblemSpec::Psi(_) => Kind::Psi,
            ProblemSpec::Convolve(_) => Kind::Convolve,
            ProblemSpec::Series { .. } => Kind::Series,
            ProblemSpec::Verify { .. } => Kind::Verify,
        }
    }
}

#[derive(Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ranks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<Vec<ContactTuple>>,
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<Vec<i64>>>,
    #[serde(rename = "H1", default, skip_serializing_if = "Option::is_none")]
    h1: Option<Vec<Vec<i64>>>,
    #[serde(rename = "H2", default, skip_serializing_if = "Option::is_none")]
    h2: Option<Vec<Vec<i64>>>,
    #[serde(rename = "H12", default, skip_serializing_if = "Option::is_none")]
    h12: Option<Vec<Vec<i64>>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    inclusion: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gamma: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    torus: Option<TorusDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    covers: Option<CoversDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    input: Option<InputDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    series: Option<SeriesName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl RawSpec {
    fn present(&self) -> Vec<&'static str> {
        let mut out = vec![];
        let mut mark = |name, on: bool| {
            if on {
                out.push(name);
            }
        };
        mark("rank", self.rank.is_some());
        mark("ranks", self.ranks.is_some());
        mark("s", self.s.is_some());
        mark("H", self.h.is_some());
        mark("H1", self.h1.is_some());
        mark("H2", self.h2.is_some());
        mark("H12", self.h12.is_some());
        mark("E", self.inclusion.is_some());
        mark("j1", self.j1.is_some());
        mark("j2", self.j2.is_some());
        mark("gamma", self.gamma.is_some());
        mark("torus", self.torus.is_some());
        mark("covers", self.covers.is_some());
        mark("input", self.input.is_some());
        mark("series", self.series.is_some());
        mark("genus", self.genus.is_some());
        mark("order", self.order.is_some());
        mark("suite", self.suite.is_some());
        mark("trials", self.trials.is_some());
        mark("seed", self.seed.is_some());
        out
    }
}

fn allowed_fields(kind: Kind) -> &'static [&'static str] {
    match kind {
        Kind::Deck => &["rank", "ranks", "s", "H"],
        Kind::Psi => &["rank", "ranks", "s", "H1", "H2", "H12", "E", "j1", "j2", "gamma"],
        Kind::Convolve => &["torus", "covers", "input"],
        Kind::Series => &["series", "genus", "order"],
        Kind::Verify => &["suite", "order", "trials", "seed"],
    }
}

/// 1-based line of the first `"key":` in `text`, or 1.
fn line_of_key(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    let mut from = 0;
    while let Some(pos) = text[from..].find(&needle) {
        let at = from + pos;
        let rest = text[at + needle.len()..].trim_start();
        if rest.starts_with(':') {
            return text[..at].matches('\n').count() + 1;
        }
        from = at + needle.len();
    }
    1
}

struct SchemaCtx<'a> {
    text: &'a str,
    kind: Kind,
}

impl SchemaCtx<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> CliError {
        CliError::Schema {
            field: field.to_string(),
            line: line_of_key(self.text, field),
            message: message.into(),
        }
    }

    fn missing(&self, field: &str) -> CliError {
        let line = line_of_key(self.text, "kind");
        CliError::Schema {
            field: field.to_string(),
            line,
            message: format!("required for kind `{}`", self.kind),
        }
    }

    fn require<T>(&self, v: Option<T>, field: &str) -> Result<T, CliError> {
        v.ok_or_else(|| self.missing(field))
    }

    fn contact(
        &self,
        field: &str,
        rank: Option<usize>,
        ranks: Option<Vec<usize>>,
        s: Vec<ContactTuple>,
    ) -> Result<Contact, CliError> {
        let ranks = match (rank, ranks) {
            (Some(_), Some(_)) => return Err(self.err(field, "give either `rank` or `ranks`, not both")),
            (Some(r), None) => vec![r; s.len()],
            (None, Some(rs)) => rs,
            (None, None) => return Err(self.err(field, "needs `rank` or `ranks`")),
        };
        if ranks.len() != s.len() {
            return Err(self.err(
                field,
                format!("{} ranks given for {} contact tuples", ranks.len(), s.len()),
            ));
        }
        Ok(Contact { ranks, s })
    }

    fn contact_doc(&self, field: &str, doc: ContactDoc) -> Result<Contact, CliError> {
        self.contact(field, doc.rank, doc.ranks, doc.s)
    }
}

/// Parses and validates a problem document.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, CliError> {
    let raw: RawSpec = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let kind = raw.kind.ok_or(CliError::Schema {
        field: "kind".into(),
        line: 1,
        message: "missing field".into(),
    })?;
    let cx = SchemaCtx { text, kind };
    let allowed = allowed_fields(kind);
    if let Some(bad) = raw.present().into_iter().find(|f| !allowed.contains(f)) {
        return Err(cx.err(bad, format!("not allowed for kind `{kind}`")));
    }
    let spec = match kind {
        Kind::Deck => ProblemSpec::Deck(DeckProblem {
            contact: cx.contact("s", raw.rank, raw.ranks, cx.require(raw.s, "s")?)?,
            h: raw.h.unwrap_or_default(),
        }),
        Kind::Psi => ProblemSpec::Psi(PsiProblem {
            contact: cx.contact("s", raw.rank, raw.ranks, cx.require(raw.s, "s")?)?,
            h1: raw.h1.unwrap_or_default(),
            h2: raw.h2.unwrap_or_default(),
            h12: raw.h12.unwrap_or_default(),
            inclusion: raw.inclusion,
            j1: raw.j1.unwrap_or(0),
            j2: raw.j2.unwrap_or(0),
            gamma: cx.require(raw.gamma, "gamma")?,
        }),
        Kind::Convolve => {
            let setup = match (raw.torus, raw.covers) {
                (Some(t), None) => ConvolveSetup::Torus { s1: t.s1, s2: t.s2 },
                (None, Some(c)) => ConvolveSetup::General {
                    s_prime: cx.contact_doc("s_prime", c.s_prime)?,
                    s: cx.contact_doc("s", c.s)?,
                    s_dprime: cx.contact_doc("s_dprime", c.s_dprime)?,
                    modules: c.modules,
                },
                (Some(_), Some(_)) => return Err(cx.err("covers", "give either `torus` or `covers`, not both")),
                (None, None) => return Err(cx.missing("torus")),
            };
            ProblemSpec::Convolve(ConvolveProblem {
                setup,
                input: cx.require(raw.input, "input")?,
            })
        }
        Kind::Series => {
            let series = match (cx.require(raw.series, "series")?, raw.genus) {
                (SeriesName::F, Some(g)) => SeriesRequest::F(g),
                (SeriesName::F, None) => return Err(cx.missing("genus")),
                (_, Some(_)) => return Err(cx.err("genus", "only allowed with series `F`")),
                (SeriesName::G, None) => SeriesRequest::G,
                (SeriesName::Eta12, None) => SeriesRequest::Eta12,
                (SeriesName::H, None) => SeriesRequest::H,
            };
            ProblemSpec::Series {
                series,
                order: raw.order,
            }
        }
        Kind::Verify => ProblemSpec::Verify {
            suite: cx.require(raw.suite, "suite")?,
            order: raw.order,
            trials: raw.trials,
            seed: raw.seed,
        },
    };
    Ok(spec)
}

fn contact_to_doc(c: &Contact) -> ContactDoc {
    ContactDoc {
        rank: None,
        ranks: Some(c.ranks.clone()),
        s: c.s.clone(),
    }
}

/// Canonical JSON rendering; `parse_spec(&print_spec(x)) == x`.
pub fn print_spec(spec: &ProblemSpec) -> String {
    let mut raw = RawSpec {
        kind: Some(spec.kind()),
        ..RawSpec::default()
    };
    match spec {
        ProblemSpec::Deck(d) => {
            raw.ranks = Some(d.contact.ranks.clone());
            raw.s = Some(d.contact.s.clone());
            raw.h = Some(d.h.clone());
        }
        ProblemSpec::Psi(p) => {
            raw.ranks = Some(p.contact.ranks.clone());
            raw.s = Some(p.contact.s.clone());
            raw.h1 = Some(p.h1.clone());
            raw.h2 = Some(p.h2.clone());
            raw.h12 = Some(p.h12.clone());
            raw.inclusion = p.inclusion.clone();
            raw.j1 = Some(p.j1);
            raw.j2 = Some(p.j2);
            raw.gamma = Some(p.gamma.clone());
        }
        ProblemSpec::Convolve(c) => {
            match &c.setup {
                ConvolveSetup::Torus { s1, s2 } => {
                    raw.torus = Some(TorusDoc {
                        s1: s1.clone(),
                        s2: s2.clone(),
                    })
                }
                ConvolveSetup::General {
                    s_prime,
                    s,
                    s_dprime,
                    modules,
                } => {
                    raw.covers = Some(CoversDoc {
                        s_prime: contact_to_doc(s_prime),
                        s: contact_to_doc(s),
                        s_dprime: contact_to_doc(s_dprime),
                        modules: modules.clone(),
                    })
                }
            }
            raw.input = Some(c.input.clone());
        }
        ProblemSpec::Series { series, order } => {
            let (name, genus) = match series {
                SeriesRequest::G => (SeriesName::G, None),
                SeriesRequest::Eta12 => (SeriesName::Eta12, None),
                SeriesRequest::F(g) => (SeriesName::F, Some(*g)),
                SeriesRequest::H => (SeriesName::H, None),
            };
            raw.series = Some(name);
            raw.genus = genus;
            raw.order = *order;
        }
        ProblemSpec::Verify {
            suite,
            order,
            trials,
            seed,
        } => {
            raw.suite = Some(*suite);
            raw.order = *order;
            raw.trials = *trials;
            raw.seed = *seed;
        }
    }
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}
