use std::collections::BTreeSet;
use std::fmt::Debug;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};
use subseq_core::absent::{self, MasIndex, SasIndex};
use subseq_core::automata::{self, CountingNfa};
use subseq_core::congruence::{self, SimonTree};
use subseq_core::matcher::{match_classic, match_gc, match_range};
use subseq_core::oracle::{
    absent_enum_oracle, all_subsequences, edit_min_oracle, enumerate_subseq, shortlex_oracle, subseq_upto,
    AbsentVariant, EditOp, Mode, OracleLimits, DEFAULT_EMBEDDING_BUDGET,
};
use subseq_core::universality::{self, DEFAULT_CANDIDATE_BUDGET};
use subseq_core::{Alphabet, Dfa, Error, GapTuple, Word};

use crate::codec::Codec;
use crate::gapfile::{self, DfaSpec, GapSpec};
use crate::{Cli, Command, EditKind, Envelope, InvocationResult, Status};

struct Fail {
    status: Status,
    message: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = if e.is_resource() {
            Status::ResourceError
        } else {
            Status::InputError
        };
        Fail {
            status,
            message: e.to_string(),
        }
    }
}

struct Answer {
    text: String,
    json: Value,
}

impl Answer {
    fn new(text: impl ToString, json: Value) -> Self {
        Answer {
            text: text.to_string(),
            json,
        }
    }

    fn boolean(b: bool) -> Self {
        Answer::new(b, json!(b))
    }
}

type Out = Result<Answer, Fail>;

struct Ctx<'a> {
    cli: &'a Cli,
    codec: Codec,
    specs: Option<Vec<GapSpec>>,
    candidates: u64,
    embeddings: u64,
    limits: OracleLimits,
}

pub(crate) fn execute(cli: &Cli) -> InvocationResult {
    let name = command_name(&cli.command);
    let outcome = prepare(cli).and_then(|ctx| dispatch(&ctx));
    match outcome {
        Ok(answer) => InvocationResult {
            status: Status::Ok,
            payload: if cli.json {
                envelope(Status::Ok, &name, Some(answer.json), None)
            } else {
                answer.text
            },
        },
        Err(fail) => InvocationResult {
            status: fail.status,
            payload: if cli.json {
                envelope(fail.status, &name, None, Some(fail.message))
            } else {
                format!("error ({}): {}", fail.status.code(), fail.message)
            },
        },
    }
}

fn envelope(status: Status, command: &str, result: Option<Value>, error: Option<String>) -> String {
    let e = Envelope {
        status,
        command: command.to_string(),
        result,
        error,
    };
    serde_json::to_string(&e).expect("JSON values always serialize")
}

/// `MatchRange { .. }` becomes `match-range`.
fn command_name(c: &Command) -> String {
    let debug = format!("{c:?}");
    let camel: String = debug.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut out = String::new();
    for (i, ch) in camel.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn inputs(c: &Command) -> (Vec<&str>, Option<&Path>) {
    use Command::*;
    match c {
        Match { u, w } | IsSas { u, w } | IsMas { u, w } | MasExt { w, u } | MatchRange { u, w, .. } => {
            (vec![u, w], None)
        }
        MatchGc { u, w, gc } => (vec![u, w], Some(gc)),
        Arch { w }
        | Universality { w, .. }
        | UniRange { w, .. }
        | EditUni { w, .. }
        | Sas { w }
        | SasRange { w, .. }
        | SasEnum { w, .. }
        | MasEnum { w, .. }
        | MasLongest { w }
        | Shortlex { w, .. }
        | SimonTree { w }
        | Dfa { w, .. } => (vec![w], None),
        UniGc { w, gc, .. } => (vec![w], Some(gc)),
        Nfa { w, gc, .. } => (vec![w], gc.as_ref()),
        Pmas { v, w, .. } | Psas { v, w, .. } | MaxK { v, w } | Contains { w, v, .. } | Distinguish { w, v, .. } => {
            (vec![v, w], None)
        }
        Equi { v, w, gc, .. } | EquiMult { w, v, gc, .. } => (vec![v, w], gc.as_ref()),
        Count { p, w, gc } => (vec![p, w], gc.as_ref()),
    }
    .pipe(|(ws, gc)| (ws.into_iter().map(String::as_str).collect(), gc.map(|p| p.as_path())))
}

trait Pipe: Sized {
    fn pipe<T>(self, f: impl FnOnce(Self) -> T) -> T {
        f(self)
    }
}

impl<T> Pipe for T {}

fn prepare(cli: &Cli) -> Result<Ctx<'_>, Fail> {
    let (words, gc_path) = inputs(&cli.command);
    let specs = match gc_path {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Fail {
                status: Status::InputError,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            Some(gapfile::parse_specs(&text)?)
        }
        None => None,
    };
    let mut tokens = words;
    if let Some(s) = &specs {
        tokens.extend(gapfile::symbol_tokens(s));
    }
    let codec = Codec::new(cli.symbols, cli.alphabet.as_deref(), &tokens)?;
    Ok(Ctx {
        cli,
        codec,
        specs,
        candidates: cli.budget.unwrap_or(DEFAULT_CANDIDATE_BUDGET),
        embeddings: cli.budget.unwrap_or(DEFAULT_EMBEDDING_BUDGET),
        limits: OracleLimits {
            max_len: cli.oracle_max_len,
            max_sigma: cli.oracle_max_sigma,
            max_k: cli.oracle_max_k,
        },
    })
}

impl Ctx<'_> {
    fn sigma(&self) -> &Alphabet {
        self.codec.alphabet()
    }

    fn word(&self, s: &str) -> Result<Word, Fail> {
        Ok(self.codec.parse_word(s)?)
    }

    fn text(&self, w: &Word) -> String {
        self.codec.show_text(w)
    }

    fn show(&self, w: &Word) -> Value {
        json!(self.codec.show(w))
    }

    /// The gap file padded to `arity`, or unconstrained gaps.
    fn gaps(&self, arity: usize) -> Result<GapTuple, Fail> {
        match &self.specs {
            Some(specs) => Ok(gapfile::to_tuple(specs, &self.codec, arity)?),
            None => Ok(GapTuple::unconstrained(arity)),
        }
    }

    /// Runs the oracle when requested; a returned diagnostic is a mismatch.
    fn verify(&self, check: impl FnOnce() -> Result<Option<String>, Error>) -> Result<(), Fail> {
        if !self.cli.oracle {
            return Ok(());
        }
        match check()? {
            None => Ok(()),
            Some(message) => Err(Fail {
                status: Status::OracleMismatch,
                message,
            }),
        }
    }

    fn guard(&self, w: &Word) -> Result<(), Error> {
        if w.len() > self.limits.max_len || self.sigma().len() > self.limits.max_sigma {
            return Err(Error::BudgetExceeded {
                what: "oracle",
                required: w.len().max(self.sigma().len()) as u128,
                budget: self.limits.max_len.min(self.limits.max_sigma) as u64,
            });
        }
        Ok(())
    }

    fn keys(&self, w: &Word, k: usize, mode: Mode<'_>) -> Result<BTreeSet<Word>, Error> {
        Ok(enumerate_subseq(w, k, mode, self.embeddings)?.key_set())
    }

    fn brute_iota(&self, w: &Word) -> Result<usize, Error> {
        let s = self.sigma().len() as u128;
        let mut k = 0;
        while self.keys(w, k + 1, Mode::Classic)?.len() as u128 == s.pow(k as u32 + 1) {
            k += 1;
        }
        Ok(k)
    }

    fn words(&self, ws: &[Word]) -> (String, Value) {
        let text = ws.iter().map(|w| self.text(w)).collect::<Vec<_>>().join("\n");
        (text, ws.iter().map(|w| self.show(w)).collect())
    }
}

fn differ<T: PartialEq + Debug>(what: &str, got: T, oracle: T) -> Option<String> {
    (got != oracle).then(|| format!("{what}: algorithm gave {got:?}, oracle gave {oracle:?}"))
}

fn dispatch(ctx: &Ctx) -> Out {
    use Command::*;
    let sigma = ctx.sigma();
    match &ctx.cli.command {
        Match { u, w } => {
            let (u, w) = (ctx.word(u)?, ctx.word(w)?);
            let m = match_classic(&u, &w);
            ctx.verify(|| Ok(differ("match", m.matched, ctx.keys(&w, u.len(), Mode::Classic)?.contains(&u))))?;
            Ok(witness(m.matched, m.embedding.as_ref().map(|e| e.positions())))
        }
        MatchRange { u, w, p } => {
            let (u, w) = (ctx.word(u)?, ctx.word(w)?);
            let r = match_range(&u, &w, *p)?;
            ctx.verify(|| {
                let mut expect = Vec::new();
                for t in 1..=w.len() {
                    let window = w.factor((t + 1).saturating_sub(*p).max(1), t);
                    expect.push(ctx.keys(&window, u.len(), Mode::Classic)?.contains(&u));
                }
                Ok(differ("window report", &r.per_position, &expect))
            })?;
            Ok(Answer::new(
                r.matched(),
                json!({"matched": r.matched(), "per_position": r.per_position, "hits": r.hits()}),
            ))
        }
        MatchGc { u, w, .. } => {
            let (u, w) = (ctx.word(u)?, ctx.word(w)?);
            let gc = ctx.gaps(u.len().saturating_sub(1))?;
            let m = match_gc(&u, &w, &gc)?;
            ctx.verify(|| Ok(differ("gc match", m.matched, ctx.keys(&w, u.len(), Mode::Gc(&gc))?.contains(&u))))?;
            Ok(witness(m.matched, m.embedding.as_ref().map(|e| e.positions())))
        }
        Arch { w } => {
            let w = ctx.word(w)?;
            let f = universality::arch_factorize(&w, sigma)?;
            ctx.verify(|| Ok(differ("universality index", f.iota, ctx.brute_iota(&w)?)))?;
            let mut text = vec![format!("iota: {}", f.iota)];
            let mut arches = Vec::new();
            for (n, (&(i, j), x)) in f.arches.iter().zip(f.arch_words(&w)).enumerate() {
                text.push(format!("arch {}: [{i}, {j}] {}", n + 1, ctx.text(&x)));
                arches.push(json!({"start": i, "end": j, "word": ctx.show(&x)}));
            }
            let rest = f.rest_word(&w);
            text.push(format!("rest: [{}, {}] {}", f.rest.0, f.rest.1, ctx.text(&rest)));
            Ok(Answer::new(
                text.join("\n"),
                json!({
                    "iota": f.iota,
                    "arches": arches,
                    "rest": {"start": f.rest.0, "end": f.rest.1, "word": ctx.show(&rest)},
                }),
            ))
        }
        Universality { w, k } => {
            let w = ctx.word(w)?;
            let iota = universality::universality_index(&w, sigma)?;
            ctx.verify(|| Ok(differ("universality index", iota, ctx.brute_iota(&w)?)))?;
            Ok(match k {
                Some(k) => Answer::boolean(*k <= iota),
                None => Answer::new(iota, json!(iota)),
            })
        }
        UniRange { w, k, p } => {
            let w = ctx.word(w)?;
            let b = universality::range_universal(&w, sigma, *k, *p, ctx.candidates)?;
            ctx.verify(|| {
                let n = ctx.keys(&w, *k, Mode::Range(*p))?.len() as u128;
                Ok(differ("range universality", b, n == (sigma.len() as u128).pow(*k as u32)))
            })?;
            Ok(Answer::boolean(b))
        }
        UniGc { w, k, .. } => {
            let w = ctx.word(w)?;
            let gc = ctx.gaps(k.saturating_sub(1))?;
            let b = universality::gc_universal(&w, sigma, *k, &gc, ctx.candidates)?;
            ctx.verify(|| {
                let n = ctx.keys(&w, *k, Mode::Gc(&gc))?.len() as u128;
                Ok(differ("gc universality", b, n == (sigma.len() as u128).pow(*k as u32)))
            })?;
            Ok(Answer::boolean(b))
        }
        EditUni { w, op, k } => {
            let w = ctx.word(w)?;
            let (d, oracle_op, name) = match op {
                EditKind::Insert => (universality::min_insertions(&w, sigma, *k)?, EditOp::Insert, "insert"),
                EditKind::Delete => (universality::min_deletions(&w, sigma, *k)?, EditOp::Delete, "delete"),
                EditKind::Substitute => (
                    universality::min_substitutions(&w, sigma, *k)?,
                    EditOp::Substitute,
                    "substitute",
                ),
                EditKind::SubstituteExact => (
                    universality::min_substitutions_exact(&w, sigma, *k)?,
                    EditOp::SubstituteExact,
                    "substitute-exact",
                ),
            };
            ctx.verify(|| Ok(differ("edit distance", d, edit_min_oracle(&w, sigma, *k, oracle_op, &ctx.limits)?)))?;
            Ok(Answer::new(d, json!({"op": name, "k": k, "edits": d})))
        }
        Sas { w } => {
            let w = ctx.word(w)?;
            let x = absent::sas_one(&w, sigma)?;
            ctx.verify(|| {
                let set = absent_enum_oracle(&w, sigma, AbsentVariant::Sas, &ctx.limits)?;
                Ok((!set.contains(&x)).then(|| format!("{} is not a shortest absent subsequence", ctx.text(&x))))
            })?;
            Ok(Answer::new(ctx.text(&x), ctx.show(&x)))
        }
        SasRange { w, i, j } => {
            let w = ctx.word(w)?;
            let index = absent::SasRange::new(&w, sigma)?;
            let h = index.query(*i, *j)?;
            let x = h.materialize(&index);
            ctx.verify(|| {
                let set = absent_enum_oracle(&w.factor(*i, *j), sigma, AbsentVariant::Sas, &ctx.limits)?;
                let len = set.first().map_or(0, |x| x.len());
                Ok(differ("range SAS", (h.length, true), (len, set.contains(&x))))
            })?;
            Ok(Answer::new(
                format!("{}\n{}", h.length, ctx.text(&x)),
                json!({"i": i, "j": j, "length": h.length, "word": ctx.show(&x)}),
            ))
        }
        IsSas { u, w } | IsMas { u, w } => {
            let (u, w) = (ctx.word(u)?, ctx.word(w)?);
            let sas = matches!(ctx.cli.command, IsSas { .. });
            let b = if sas {
                absent::is_sas(&u, &w, sigma)?
            } else {
                absent::is_mas(&u, &w, sigma)?
            };
            ctx.verify(|| {
                let variant = if sas { AbsentVariant::Sas } else { AbsentVariant::Mas };
                Ok(differ("absent test", b, absent_enum_oracle(&w, sigma, variant, &ctx.limits)?.contains(&u)))
            })?;
            Ok(Answer::boolean(b))
        }
        SasEnum { w, limit } => {
            let w = ctx.word(w)?;
            let index = SasIndex::new(&w, sigma)?;
            let all: Vec<Word> = index.enumerate().take(limit.unwrap_or(usize::MAX)).collect();
            ctx.verify(|| {
                let set = absent_enum_oracle(&w, sigma, AbsentVariant::Sas, &ctx.limits)?;
                let expect: Vec<Word> = set.into_iter().take(all.len().max(limit.unwrap_or(usize::MAX))).collect();
                Ok(differ("SAS list", &all, &expect))
            })?;
            let (text, json) = ctx.words(&all);
            Ok(Answer::new(text, json))
        }
        MasEnum { w, limit } => {
            let w = ctx.word(w)?;
            let index = MasIndex::new(&w, sigma)?;
            let all: Vec<Word> = index.enumerate().take(limit.unwrap_or(usize::MAX)).collect();
            ctx.verify(|| {
                let mut expect: Vec<Word> = absent_enum_oracle(&w, sigma, AbsentVariant::Mas, &ctx.limits)?
                    .into_iter()
                    .collect();
                expect.sort_by(|a, b| a.shortlex_cmp(b));
                expect.truncate(limit.unwrap_or(usize::MAX));
                Ok(differ("MAS list", &all, &expect))
            })?;
            let (text, json) = ctx.words(&all);
            Ok(Answer::new(text, json))
        }
        MasLongest { w } => {
            let w = ctx.word(w)?;
            let x = MasIndex::new(&w, sigma)?.longest();
            ctx.verify(|| {
                let set = absent_enum_oracle(&w, sigma, AbsentVariant::Mas, &ctx.limits)?;
                let max = set.iter().map(|x| x.len()).max().unwrap_or(0);
                Ok(differ("longest MAS", Some(&x), set.iter().find(|x| x.len() == max)))
            })?;
            Ok(Answer::new(ctx.text(&x), ctx.show(&x)))
        }
        MasExt { w, u } => {
            let (w, u) = (ctx.word(w)?, ctx.word(u)?);
            let x = absent::mas_ext(&w, sigma, &u)?;
            ctx.verify(|| {
                let set = absent_enum_oracle(&w, sigma, AbsentVariant::Mas, &ctx.limits)?;
                let expect = set.into_iter().filter(|x| x.starts_with(&u)).min_by(|a, b| a.shortlex_cmp(b));
                Ok(differ("MAS extension", &x, &expect))
            })?;
            Ok(match &x {
                Some(x) => Answer::new(ctx.text(x), ctx.show(x)),
                None => Answer::new("none", Value::Null),
            })
        }
        Pmas { v, w, p } | Psas { v, w, p } => {
            let (v, w) = (ctx.word(v)?, ctx.word(w)?);
            let mas = matches!(ctx.cli.command, Pmas { .. });
            let b = if mas {
                absent::is_p_mas(&v, &w, *p)?
            } else {
                absent::is_p_sas(&v, &w, sigma, *p, ctx.candidates)?
            };
            ctx.verify(|| {
                let variant = if mas { AbsentVariant::PMas(*p) } else { AbsentVariant::PSas(*p) };
                Ok(differ("p-absent test", b, absent_enum_oracle(&w, sigma, variant, &ctx.limits)?.contains(&v)))
            })?;
            Ok(Answer::boolean(b))
        }
        Shortlex { w, k } => {
            let w = ctx.word(w)?;
            let x = congruence::shortlex(&w, *k);
            ctx.verify(|| Ok(differ("shortlex form", &x, &shortlex_oracle(&w, sigma, *k, &ctx.limits)?)))?;
            Ok(Answer::new(ctx.text(&x), ctx.show(&x)))
        }
        Equi { v, w, k, p, gc } => {
            let (v, w) = (ctx.word(v)?, ctx.word(w)?);
            let b = match (p, gc) {
                (Some(p), _) => congruence::equi_range(&v, &w, sigma, *k, *p, ctx.candidates)?,
                (None, Some(_)) => {
                    let gc = ctx.gaps(k.saturating_sub(1))?;
                    congruence::equi_gc(&v, &w, sigma, *k, &gc, ctx.candidates)?
                }
                (None, None) => congruence::equi(&v, &w, *k),
            };
            ctx.verify(|| {
                let expect = match (p, gc) {
                    (Some(p), _) => ctx.keys(&v, *k, Mode::Range(*p))? == ctx.keys(&w, *k, Mode::Range(*p))?,
                    (None, Some(_)) => {
                        let gc = ctx.gaps(k.saturating_sub(1)).map_err(|f| Error::InvalidArgument(f.message))?;
                        ctx.keys(&v, *k, Mode::Gc(&gc))? == ctx.keys(&w, *k, Mode::Gc(&gc))?
                    }
                    (None, None) => subseq_upto(&v, *k, ctx.embeddings)? == subseq_upto(&w, *k, ctx.embeddings)?,
                };
                Ok(differ("equivalence", b, expect))
            })?;
            Ok(Answer::boolean(b))
        }
        MaxK { v, w } => {
            let (v, w) = (ctx.word(v)?, ctx.word(w)?);
            let k = congruence::max_equi_k(&v, &w);
            ctx.verify(|| {
                let top = v.len().max(w.len());
                let mut expect = 0;
                while expect < top && subseq_upto(&v, expect + 1, ctx.embeddings)? == subseq_upto(&w, expect + 1, ctx.embeddings)? {
                    expect += 1;
                }
                Ok(differ("largest level", k, expect))
            })?;
            Ok(Answer::new(k, json!(k)))
        }
        SimonTree { w } => {
            let w = ctx.word(w)?;
            let tree = congruence::simon_tree(&w);
            ctx.verify(|| {
                ctx.guard(&w)?;
                check_tree(ctx, &w, &tree)
            })?;
            let mut lines = Vec::new();
            render_tree(&tree, &mut lines);
            Ok(Answer::new(lines.join("\n"), serde_json::to_value(&tree).expect("tree serializes")))
        }
        Contains { w, v, k } => {
            let (w, v) = (ctx.word(w)?, ctx.word(v)?);
            let b = automata::contains_k(&w, &v, sigma, *k)?;
            ctx.verify(|| {
                let expect = ctx.keys(&w, *k, Mode::Classic)?.is_subset(&ctx.keys(&v, *k, Mode::Classic)?);
                Ok(differ("containment", b, expect))
            })?;
            Ok(Answer::boolean(b))
        }
        Distinguish { w, v, k } => {
            let (w, v) = (ctx.word(w)?, ctx.word(v)?);
            let d = automata::shortest_distinguisher(&w, &v, sigma, *k)?;
            ctx.verify(|| {
                let contained = ctx.keys(&w, *k, Mode::Classic)?.is_subset(&ctx.keys(&v, *k, Mode::Classic)?);
                let expect = if contained {
                    None
                } else {
                    let pv = all_subsequences(&v, Mode::Classic, ctx.embeddings)?;
                    all_subsequences(&w, Mode::Classic, ctx.embeddings)?
                        .into_iter()
                        .filter(|x| !x.is_empty() && x.len() <= *k && !pv.contains(x))
                        .min_by(|a, b| a.shortlex_cmp(b))
                };
                Ok(differ("distinguisher", &d, &expect))
            })?;
            Ok(match &d {
                Some(x) => Answer::new(ctx.text(x), ctx.show(x)),
                None => Answer::new("none", Value::Null),
            })
        }
        Count { p, w, .. } => {
            let (p, w) = (ctx.word(p)?, ctx.word(w)?);
            let gc = ctx.gaps(p.len().saturating_sub(1))?;
            let c = automata::count_embeddings(&p, &w, &gc)?;
            ctx.verify(|| {
                let m = enumerate_subseq(&w, p.len(), Mode::Gc(&gc), ctx.embeddings)?;
                Ok(differ("embedding count", &c, m.get(&p).unwrap_or(&BigUint::from(0u32))))
            })?;
            Ok(Answer::new(&c, json!(c.to_string())))
        }
        EquiMult { w, v, k, .. } => {
            let (w, v) = (ctx.word(w)?, ctx.word(v)?);
            let k = k.unwrap_or_else(|| ctx.specs.as_ref().map_or(1, |s| s.len() + 1));
            let gc = ctx.gaps(k.saturating_sub(1))?;
            let b = if k == 0 {
                true
            } else {
                automata::equi_multiplicity(&w, &v, sigma, &gc)?
            };
            ctx.verify(|| {
                let mw = enumerate_subseq(&w, k, Mode::Gc(&gc), ctx.embeddings)?.into_map();
                let mv = enumerate_subseq(&v, k, Mode::Gc(&gc), ctx.embeddings)?.into_map();
                Ok(differ("multiplicity equivalence", b, mw == mv))
            })?;
            Ok(Answer::boolean(b))
        }
        Dfa { w, complement } => {
            let w = ctx.word(w)?;
            let dfa = if *complement {
                automata::build_non_subseq_dfa(&w, sigma)?
            } else {
                automata::build_subseq_dfa(&w, sigma)?
            };
            ctx.verify(|| {
                ctx.guard(&w)?;
                check_dfa(ctx, &w, &dfa, *complement)
            })?;
            let spec = serde_json::to_value(GapSpec::Dfa(DfaSpec::of(&dfa, &ctx.codec))).expect("spec serializes");
            Ok(Answer::new(&spec, spec.clone()))
        }
        Nfa { w, k, .. } => {
            let w = ctx.word(w)?;
            let gc = ctx.gaps(k.saturating_sub(1))?;
            let nfa = automata::build_counting_nfa(&w, sigma, &gc, *k)?;
            ctx.verify(|| {
                let m = enumerate_subseq(&w, *k, Mode::Gc(&gc), ctx.embeddings)?;
                for p in sigma.words_of_len(*k) {
                    let got = nfa.path_count(&p)?;
                    let expect = m.get(&p).cloned().unwrap_or_default();
                    if got != expect {
                        return Ok(differ(&format!("path count of {}", ctx.text(&p)), got, expect));
                    }
                }
                Ok(None)
            })?;
            let doc = nfa_json(ctx, &nfa);
            Ok(Answer::new(&doc, doc.clone()))
        }
    }
}

fn witness(matched: bool, positions: Option<&[usize]>) -> Answer {
    Answer::new(matched, json!({"matched": matched, "embedding": positions}))
}

fn nfa_json(ctx: &Ctx, nfa: &CountingNfa) -> Value {
    let transitions: Vec<Value> = nfa
        .transitions
        .iter()
        .map(|&(s, a, t)| json!([s, ctx.codec.symbol_name(a), t]))
        .collect();
    json!({
        "states": nfa.states,
        "initial": nfa.initial,
        "finals": nfa.finals,
        "transitions": transitions,
    })
}

fn render_tree(node: &SimonTree, lines: &mut Vec<String>) {
    lines.push(format!("{}[{}, {}]", "  ".repeat(node.depth), node.start, node.end));
    for c in &node.children {
        render_tree(c, lines);
    }
}

/// Blocks share `Subseq_k` of their suffixes; adjacent siblings differ.
fn check_tree(ctx: &Ctx, w: &Word, tree: &SimonTree) -> Result<Option<String>, Error> {
    let n = w.len();
    let suffix = |l: usize, k: usize| ctx.keys(&w.factor(l, n), k, Mode::Classic);
    let mut stack = vec![tree];
    while let Some(node) = stack.pop() {
        for l in node.start..node.end {
            if suffix(l, node.depth)? != suffix(l + 1, node.depth)? {
                return Ok(Some(format!("block [{}, {}] splits at {l}", node.start, node.end)));
            }
        }
        for pair in node.children.windows(2) {
            if suffix(pair[0].start, node.depth + 1)? == suffix(pair[1].end, node.depth + 1)? {
                return Ok(Some(format!("blocks ending at {} and {} should merge", pair[1].end, pair[0].end)));
            }
        }
        stack.extend(&node.children);
    }
    Ok(None)
}

fn check_dfa(ctx: &Ctx, w: &Word, dfa: &Dfa, complement: bool) -> Result<Option<String>, Error> {
    let present = all_subsequences(w, Mode::Classic, ctx.embeddings)?;
    for len in 0..=w.len() + 1 {
        for x in ctx.sigma().words_of_len(len) {
            let inside = present.contains(&x);
            let expect = if complement { !inside } else { inside && !x.is_empty() };
            if dfa.accepts(&x)? != expect {
                return Ok(Some(format!("automaton misclassifies {}", ctx.text(&x))));
            }
        }
    }
    Ok(None)
}
