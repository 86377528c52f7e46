//! Self-contained JSON reports and their verification.
//!
//! A report embeds the canonical text of its input, so [`verify`] needs
//! nothing else. Verification recomputes every stored number from the
//! witnesses and certificates; stored values are never trusted.

use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::digraph::{cut_vector, delete_vertices, induced_subdigraph, strongly_connected_components, Digraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::exact::{exact_optimum, Objective, SolverCaps};
use crate::generators::{self, cnf::CnfFormula};
use crate::io;
use crate::lean::{is_lean, piece_size_bound};
use crate::obstructions::{canonical_form, CutwidthOracle, ObstructionReport, TangleCertificate};
use crate::tournament::{approximate_semicomplete, relaxation, Rational};

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub(crate) fn ser_arcs<S: Serializer>(d: &Digraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&io::write_digraph(d))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| Error::InvalidArgument(format!("invalid rational '{text}'")))
}

pub fn sha256_hex(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The canonical text of the input digraph and its SHA-256 digest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub text: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn from_digraph(d: &Digraph) -> Self {
        let text = io::write_digraph(d);
        InputRecord {
            sha256: sha256_hex(&text),
            text,
        }
    }
}

/// Parameters from which a generated digraph can be rebuilt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GenParams {
    Nae { cnf: String },
    ComplementNae { cnf: String },
    Circular { t: usize, x: usize },
    Minimal { c: usize, matching: Option<Vec<(usize, usize)>> },
    Vc { graph: String, c: usize },
    RandomSemicomplete { n: usize, p_sym: f64, seed: u64 },
    RandomTournament { n: usize, seed: u64 },
    RandomDigraph { n: usize, p: f64, seed: u64 },
}

impl GenParams {
    pub fn generate(&self) -> Result<Digraph> {
        Ok(match self {
            GenParams::Nae { cnf } => generators::nae_instance(&io::parse_cnf(cnf)?)?.digraph,
            GenParams::ComplementNae { cnf } => generators::hardness_instance(&io::parse_cnf(cnf)?)?.digraph,
            GenParams::Circular { t, x } => generators::circular_tournament(*t, *x)?,
            GenParams::Minimal { c, matching } => generators::minimal_tournament(*c, matching.as_deref())?,
            GenParams::Vc { graph, c } => generators::vc_reduction(&io::parse_graph(graph)?, *c)?,
            GenParams::RandomSemicomplete { n, p_sym, seed } => generators::random_semicomplete(*n, *p_sym, *seed)?,
            GenParams::RandomTournament { n, seed } => generators::random_tournament(*n, *seed),
            GenParams::RandomDigraph { n, p, seed } => generators::random_digraph(*n, *p, *seed)?,
        })
    }
}

/// Evidence attached to a report. Vertex ids are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The witness ordering attains the optimum; re-solved when within caps.
    Optimal { objective: Objective },
    /// The witness is the sorted ordering of the relaxation; its width and
    /// cost are at most twice the optimum.
    Approximation,
    /// Degree tangle in the relaxation; `bound` is a cutwidth lower bound.
    Tangle {
        vertices: Vec<usize>,
        k: usize,
        alpha: String,
        bound: String,
    },
    /// The witness ordering passes the leanness audit.
    Lean { refinement_steps: usize },
    KernelReject { c: usize, approximation_width: u64 },
    KernelPieces {
        c: usize,
        pieces: Vec<Vec<usize>>,
        /// Per piece, an ordering of width at most `c` (1-based piece-local
        /// indices), when the pieces were solved and all pass.
        piece_witnesses: Option<Vec<Vec<usize>>>,
    },
    OlaReject { k: u64, remaining: usize },
    OlaReduced { k: u64, vertices: Vec<usize> },
    /// A `threshold`-cutwidth-minimal induced subdigraph.
    Obstruction { vertices: Vec<usize>, threshold: u64 },
    DeletionSet { vertices: Vec<usize>, c: u64 },
    /// Reduced vertex-deletion instance: union of the kept obstruction sets.
    CvdKernel { c: u64, k: usize, vertices: Vec<usize>, family: Vec<Vec<usize>> },
    /// Pairwise non-isomorphic minimal obstructions, as digraph texts.
    Catalog { c: u64, family: String, members: Vec<String> },
    Generated { params: GenParams },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Option<InputRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u64>,
    /// `YES` / `NO` for decisions, `REJECT` for kernel rejections.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut_vector: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<String>,
    #[serde(default)]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, input: Option<&Digraph>) -> Self {
        Report {
            command: command.into(),
            input: input.map(InputRecord::from_digraph),
            objective: None,
            value: None,
            verdict: None,
            witness: None,
            cut_vector: None,
            width: None,
            cost: None,
            solver: None,
            certificates: Vec::new(),
            output: None,
            seed: None,
            wall_time_ms: None,
        }
    }

    /// Stores `ordering` with its cut vector, width and cost on `d`.
    pub fn with_witness(mut self, d: &Digraph, ordering: &VertexOrdering) -> Result<Self> {
        let cuts = cut_vector(d, ordering)?;
        self.witness = Some(io::to_one_based(ordering.sequence()));
        self.width = Some(cuts.width());
        self.cost = Some(cuts.cost());
        self.cut_vector = Some(cuts.0);
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed report: {e}")))
    }
}

impl From<&TangleCertificate> for Certificate {
    fn from(t: &TangleCertificate) -> Self {
        Certificate::Tangle {
            vertices: io::to_one_based(&t.vertices),
            k: t.k,
            alpha: t.alpha.to_string(),
            bound: t.bound.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            detail: detail.into(),
        });
    }
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    io::from_one_based(v)
}

/// Re-derives every claim of `report` from its embedded input, witnesses
/// and certificates. Optimality claims are re-solved when within `caps`.
pub fn verify(report: &Report, caps: &SolverCaps) -> Result<Verification> {
    let mut out = Verification { checks: Vec::new() };
    let oracle = CutwidthOracle::new(*caps);

    let input = match &report.input {
        Some(rec) => {
            out.push("input digest", sha256_hex(&rec.text) == rec.sha256, rec.sha256.clone());
            Some(io::parse_digraph(&rec.text)?)
        }
        None => None,
    };

    let mut witness_cuts = None;
    if let Some(w) = &report.witness {
        let d = input
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("witness without input".into()))?;
        let ordering = VertexOrdering::new(zero_based(w)?)?;
        let cuts = cut_vector(d, &ordering)?;
        if let Some(stored) = &report.cut_vector {
            out.push("cut vector", stored == &cuts.0, format!("{:?}", cuts.0));
        }
        if let Some(width) = report.width {
            out.push("width", width == cuts.width(), cuts.width().to_string());
        }
        if let Some(cost) = report.cost {
            out.push("cost", cost == cuts.cost(), cuts.cost().to_string());
        }
        if let (Some(obj), Some(value)) = (report.objective, report.value) {
            let v = obj.evaluate(&cuts);
            out.push("witness value", v == value, format!("{obj:?} of witness is {v}"));
        }
        witness_cuts = Some((ordering, cuts));
    }

    for cert in &report.certificates {
        let need_input = || {
            input
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("certificate without input".into()))
        };
        match cert {
            Certificate::Optimal { objective } => {
                let d = need_input()?;
                let claimed = match &witness_cuts {
                    Some((_, cuts)) => Some(objective.evaluate(cuts)),
                    None => report.value,
                };
                match exact_optimum(d, *objective, caps) {
                    Ok(res) => out.push(
                        "optimality",
                        Some(res.value) == claimed,
                        format!("re-solved {:?} = {}", objective, res.value),
                    ),
                    Err(Error::CapExceeded { .. }) => {
                        out.push("optimality", true, "not re-solved: instance exceeds caps")
                    }
                    Err(e) => return Err(e),
                }
            }
            Certificate::Approximation => {
                let d = need_input()?;
                let approx = approximate_semicomplete(d)?;
                let same = witness_cuts
                    .as_ref()
                    .is_some_and(|(o, _)| o == &approx.ordering);
                out.push("approximation ordering", same, "witness is the sorted relaxation ordering");
            }
            Certificate::Tangle {
                vertices,
                k,
                alpha,
                bound,
            } => {
                let d = need_input()?;
                let t = relaxation(d)?;
                let cert = TangleCertificate {
                    vertices: zero_based(vertices)?,
                    k: *k,
                    alpha: parse_rational(alpha)?,
                    bound: parse_rational(bound)?,
                };
                let below_value = match (report.objective, report.value) {
                    (Some(Objective::Cutwidth), Some(v)) => cert.bound <= Rational::from_integer(v as i128),
                    _ => true,
                };
                out.push("tangle", cert.validate(&t) && below_value, format!("lower bound {bound}"));
            }
            Certificate::Lean { .. } => {
                let d = need_input()?;
                let (ordering, _) = witness_cuts
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("lean certificate without witness".into()))?;
                let violation = is_lean(d, ordering)?;
                out.push("lean", violation.is_none(), format!("{violation:?}"));
            }
            Certificate::KernelReject { c, approximation_width } => {
                let d = need_input()?;
                let approx = approximate_semicomplete(d)?;
                out.push(
                    "kernel reject",
                    approx.width == *approximation_width && approx.width > 2 * *c as u64,
                    format!("approximation width {}", approx.width),
                );
            }
            Certificate::KernelPieces {
                c,
                pieces,
                piece_witnesses,
            } => {
                let d = need_input()?;
                let bound = piece_size_bound(*c);
                let sizes_ok = pieces.len() <= d.n().max(1) && pieces.iter().all(|p| p.len() <= bound);
                out.push("piece sizes", sizes_ok, format!("{} pieces, bound {bound}", pieces.len()));
                if let Some(ws) = piece_witnesses {
                    let mut ok = ws.len() == pieces.len();
                    for (p, w) in pieces.iter().zip(ws) {
                        let (sub, _) = induced_subdigraph(d, &zero_based(p)?)?;
                        let ord = VertexOrdering::new(zero_based(w)?)?;
                        ok &= cut_vector(&sub, &ord)?.width() <= *c as u64;
                    }
                    out.push("piece witnesses", ok, format!("every piece has width <= {c}"));
                }
            }
            Certificate::OlaReject { k, remaining } => {
                let d = need_input()?;
                let cyclic: usize = strongly_connected_components(d)
                    .iter()
                    .filter(|c| c.len() > 1)
                    .map(Vec::len)
                    .sum();
                out.push(
                    "ola reject",
                    cyclic == *remaining && cyclic as u64 > 2 * k,
                    format!("{cyclic} vertices on cycles"),
                );
            }
            Certificate::OlaReduced { k, vertices } => {
                let d = need_input()?;
                let mut cyclic: Vec<usize> = strongly_connected_components(d)
                    .into_iter()
                    .filter(|c| c.len() > 1)
                    .flatten()
                    .collect();
                cyclic.sort_unstable();
                out.push(
                    "ola kernel",
                    zero_based(vertices)? == cyclic && cyclic.len() as u64 <= 2 * k,
                    format!("{} vertices kept", cyclic.len()),
                );
            }
            Certificate::Obstruction { vertices, threshold } => {
                let d = need_input()?;
                let rep = ObstructionReport {
                    vertices: zero_based(vertices)?,
                    threshold: *threshold,
                };
                out.push("obstruction minimality", rep.validate(d, &oracle)?, format!("threshold {threshold}"));
            }
            Certificate::DeletionSet { vertices, c } => {
                let d = need_input()?;
                let (rest, _) = delete_vertices(d, &zero_based(vertices)?)?;
                let ctw = oracle.cutwidth(&rest)?;
                out.push("deletion set", ctw <= *c, format!("remaining cutwidth {ctw}"));
            }
            Certificate::CvdKernel { c, vertices, family, .. } => {
                let d = need_input()?;
                let mut ok = true;
                let kept = zero_based(vertices)?;
                for set in family {
                    let set0 = zero_based(set)?;
                    ok &= set0.iter().all(|v| kept.contains(v));
                    let rep = ObstructionReport {
                        vertices: set0,
                        threshold: c + 1,
                    };
                    ok &= rep.validate(d, &oracle)?;
                }
                let union: std::collections::BTreeSet<usize> =
                    family.iter().flatten().copied().collect();
                ok &= union.len() == kept.len();
                out.push("cvd kernel", ok, format!("{} obstruction sets", family.len()));
            }
            Certificate::Catalog { c, members, .. } => {
                let mut codes = std::collections::HashSet::new();
                let mut ok = true;
                for text in members {
                    let m = io::parse_digraph(text)?;
                    let rep = ObstructionReport {
                        vertices: (0..m.n()).collect(),
                        threshold: *c,
                    };
                    ok &= rep.validate(&m, &oracle)?;
                    ok &= codes.insert((m.n(), canonical_form(&m)?.0));
                }
                out.push("catalog", ok, format!("{} members, pairwise non-isomorphic", members.len()));
            }
            Certificate::Generated { params } => {
                let d = params.generate()?;
                let text = io::write_digraph(&d);
                out.push("regenerated output", report.output.as_deref() == Some(text.as_str()), "rebuilt from parameters");
            }
        }
    }
    Ok(out)
}

/// Convenience for callers holding a formula rather than its text.
pub fn cnf_text(phi: &CnfFormula) -> String {
    io::write_cnf(phi)
}
