use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bifix_core::code::{code_predicates, is_s_maximal, s_degree, BifixCode};
use bifix_core::decode::{bifix_decode, coding_morphism};
use bifix_core::enumerate::enumerate_s_maximal_bifix;
use bifix_core::extension::{classify_set, extension_profile, SetFlag};
use bifix_core::free_group::GroupWord;
use bifix_core::io::{CodeFile, FactorSetFile, Fixpoint, GraphFile, MorphismSpec};
use bifix_core::lab::registry;
use bifix_core::lab::suite::{run_suite, SuiteConfig};
use bifix_core::returns::return_words_in;
use bifix_core::stallings::{stallings_fold_group, SubgroupGraph};
use bifix_core::transform::internal_transformation;
use bifix_core::{Alphabet, Error, FactorSet, Word};

const DEFAULT_HORIZON: usize = 64;

#[derive(Parser)]
#[command(name = "bifix", version, about = "Factor sets of infinite words, bifix codes and subgroups of free groups")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Factor set of a fixpoint (or a prefix of the fixpoint with --prefix).
    Generate {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Extension profile and class of every word up to a length.
    Classify {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 4)]
        up_to: usize,
        /// Only these words (whitespace separated).
        #[arg(long)]
        word: Option<String>,
    },
    /// p_n, s_n and b_n.
    Complexity {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        up_to: Option<usize>,
    },
    /// Prefix, suffix and bifix tests; with a set, S-maximality as well.
    CodeCheck {
        #[command(flatten)]
        set: OptionalSetArgs,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// S-degree, kernel and parses of an S-maximal bifix code.
    CodeDegree {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        code: CodeArgs,
        /// Words whose parses are listed.
        #[arg(long)]
        parses: Option<String>,
    },
    /// Internal transformation of an S-maximal bifix code.
    Transform {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        pivot: String,
    },
    /// All S-maximal bifix codes of a given S-degree.
    Enumerate {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Maximal bifix decoding by a coding morphism onto the code.
    Decode {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        code: CodeArgs,
        /// Names of the new letters, in the order of the code words as given.
        #[arg(long, value_delimiter = ',')]
        names: Option<Vec<String>>,
        /// Horizon of the decoded set.
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// First return words, with their folded subgroup.
    Returns {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        word: String,
        /// Scan this many letters of the fixpoint instead of using the factor set.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// Subgroup queries by Stallings folding.
    Group {
        #[command(subcommand)]
        query: GroupQuery,
    },
    /// Run the theorem suite over the example registry.
    Verify {
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 5)]
        uniform_up_to: usize,
        #[arg(long, default_value_t = 12)]
        classify_up_to: usize,
        #[arg(long, default_value_t = 2)]
        return_len: usize,
        /// Restrict to registry entries (repeatable).
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Subcommand)]
enum GroupQuery {
    Index(GroupArgs),
    Rank(GroupArgs),
    Contains {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        element: String,
    },
    Transversal(GroupArgs),
    Fold(GroupArgs),
}

#[derive(Args, Clone)]
struct SetArgs {
    /// Registry name: fibonacci, tribonacci, chacon, cassaigne, neutral-not-tree, decoded-fibonacci.
    #[arg(long, conflicts_with_all = ["morphism", "factors"])]
    set: Option<String>,
    /// Morphism spec JSON.
    #[arg(long, conflicts_with = "factors")]
    morphism: Option<PathBuf>,
    /// Factor set JSON as written by `generate --format json`.
    #[arg(long)]
    factors: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<usize>,
}

#[derive(Args, Clone)]
struct OptionalSetArgs {
    #[arg(long, conflicts_with_all = ["morphism", "factors"])]
    set: Option<String>,
    #[arg(long, conflicts_with = "factors")]
    morphism: Option<PathBuf>,
    #[arg(long)]
    factors: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<usize>,
    /// Alphabet when no set is given, comma separated.
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Whitespace-separated words, or `-` for stdin.
    #[arg(long, conflicts_with = "code_file")]
    code: Option<String>,
    /// Code JSON as written by `transform` or `enumerate`.
    #[arg(long)]
    code_file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[arg(long, value_delimiter = ',', required_unless_present = "graph")]
    alphabet: Option<Vec<String>>,
    /// Generators, whitespace separated, `-` for stdin. Inverses as `x^-1` or `x⁻¹`.
    #[arg(long, conflicts_with = "graph")]
    words: Option<String>,
    /// Subgroup graph JSON as written by `group fold --format json`.
    #[arg(long)]
    graph: Option<PathBuf>,
}

enum Failure {
    /// Exit 1: the analysis answered in the negative or a precondition failed.
    Analysis(String),
    /// Exit 2: bad input or a horizon too small.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HorizonInsufficient { .. }
            | Error::InvalidAlphabet(_)
            | Error::UnknownSymbol(_)
            | Error::DuplicateRule(_)
            | Error::MissingRule(_)
            | Error::AlphabetMismatch(_)
            | Error::LengthOverflow(_) => Failure::Usage(e.to_string()),
            _ => Failure::Analysis(e.to_string()),
        }
    }
}

type Outcome = Result<Output, Failure>;

/// What a command prints, and whether it counts as success.
struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
    ok: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, dot: None, ok: true }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_input(path_or_dash: &str) -> Result<String, Failure> {
    if path_or_dash == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        Ok(path_or_dash.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: malformed JSON: {e}", path.display())))
}

struct Loaded {
    s: FactorSet,
    fixpoint: Option<Fixpoint>,
}

fn load(set: Option<&str>, morphism: Option<&PathBuf>, factors: Option<&PathBuf>, horizon: usize) -> Result<Loaded, Failure> {
    if horizon == 0 {
        return Err(usage("the horizon must be positive"));
    }
    if let Some(name) = set {
        let entry = registry::entry(name)
            .ok_or_else(|| usage(format!("unknown set `{name}`; known: {}", registry::names().join(", "))))?;
        let fixpoint = entry.fixpoint().transpose()?;
        return Ok(Loaded { s: entry.build(horizon)?, fixpoint });
    }
    if let Some(path) = morphism {
        let spec: MorphismSpec = read_json(path)?;
        let fp = spec.fixpoint()?;
        return Ok(Loaded { s: fp.factor_set(horizon)?, fixpoint: Some(fp) });
    }
    if let Some(path) = factors {
        let file: FactorSetFile = read_json(path)?;
        return Ok(Loaded { s: file.factor_set()?, fixpoint: None });
    }
    Err(usage("one of --set, --morphism or --factors is required"))
}

impl SetArgs {
    fn load_with(&self, horizon: usize) -> Result<Loaded, Failure> {
        load(self.set.as_deref(), self.morphism.as_ref(), self.factors.as_ref(), self.horizon.unwrap_or(horizon))
    }

    fn load(&self) -> Result<Loaded, Failure> {
        self.load_with(DEFAULT_HORIZON)
    }
}

impl CodeArgs {
    fn words(&self, alphabet: &Alphabet) -> Result<Vec<Word>, Failure> {
        if let Some(path) = &self.code_file {
            let file: CodeFile = read_json(path)?;
            let (a, words) = file.words()?;
            if a.names() != alphabet.names() {
                return Err(Error::AlphabetMismatch(format!("code over {a}, set over {alphabet}")).into());
            }
            return Ok(words);
        }
        let text = self.code.as_deref().ok_or_else(|| usage("one of --code or --code-file is required"))?;
        Ok(alphabet.parse_words(&read_input(text)?)?)
    }

    fn code(&self, alphabet: &Alphabet) -> Result<BifixCode, Failure> {
        Ok(BifixCode::with_alphabet(self.words(alphabet)?, alphabet)?)
    }

    fn file_alphabet(&self) -> Result<Option<Alphabet>, Failure> {
        match &self.code_file {
            Some(path) => Ok(Some(read_json::<CodeFile>(path)?.alphabet()?)),
            None => Ok(None),
        }
    }
}

fn words_json(a: &Alphabet, words: &[Word]) -> Value {
    json!(words.iter().map(|w| a.render(w)).collect::<Vec<_>>())
}

fn flag_json(a: &Alphabet, f: &SetFlag) -> Value {
    json!({"holds": f.holds, "certified_up_to": f.certified_up_to, "witness": f.witness.as_ref().map(|w| a.render(w))})
}

fn generate(set: &SetArgs, prefix: Option<usize>) -> Outcome {
    if let Some(len) = prefix {
        let loaded = set.load_with(1)?;
        let fp = loaded.fixpoint.ok_or_else(|| usage("--prefix needs a fixpoint (--set or --morphism)"))?;
        let text = fp.alphabet().render(&fp.text(len)?);
        return Ok(Output::ok(json!({"prefix": text, "length": len}), format!("{text}\n")));
    }
    let s = set.load()?.s;
    let a = s.alphabet();
    let mut text = String::new();
    for n in 0..=s.max_stored_len() {
        let words = s.words_of_length(n);
        text.push_str(&format!("{n:>3} {:>4}  {}\n", words.len(), a.render_all(words)));
    }
    Ok(Output::ok(serde_json::to_value(FactorSetFile::new(&s)).expect("serializable"), text))
}

fn classify(set: &SetArgs, up_to: usize, only: Option<&str>) -> Outcome {
    let s = set.load()?.s;
    let a = s.alphabet();
    let v = classify_set(&s, up_to)?;
    let selected: Vec<Word> = match only {
        Some(text) => a.parse_words(text)?,
        None => s.words_up_to(up_to).cloned().collect(),
    };
    let mut rows = Vec::new();
    let mut text = format!("{:<12} {:>2} {:>2} {:>2} {:>3}  {:<8} {:<9} {:<8} {}\n", "word", "l", "r", "e", "m", "class", "ordinary", "tree", "E(w)");
    for w in &selected {
        let p = extension_profile(&s, w)?;
        let wv = v.words.get(w).cloned().map_or_else(|| bifix_core::extension::classify_word(&s, w), Ok)?;
        let pairs: Vec<String> = p.pairs.iter().map(|&(x, y)| format!("({},{})", a.name(x), a.name(y))).collect();
        let class = serde_json::to_value(wv.class).expect("serializable");
        let class = class.as_str().unwrap_or_default().to_string();
        text.push_str(&format!(
            "{:<12} {:>2} {:>2} {:>2} {:>3}  {:<8} {:<9} {:<8} {}\n",
            a.render(w),
            p.l(),
            p.r(),
            p.e(),
            if p.multiplicity > 0 { format!("+{}", p.multiplicity) } else { p.multiplicity.to_string() },
            class,
            if wv.ordinary { "yes" } else { "no" },
            if wv.tree { "yes" } else if wv.acyclic { "acyclic" } else { "no" },
            pairs.join(" ")
        ));
        rows.push(json!({
            "word": a.render(w),
            "left": p.left.iter().map(|&l| a.name(l)).collect::<Vec<_>>(),
            "right": p.right.iter().map(|&l| a.name(l)).collect::<Vec<_>>(),
            "pairs": p.pairs.iter().map(|&(x, y)| [a.name(x), a.name(y)]).collect::<Vec<_>>(),
            "multiplicity": p.multiplicity,
            "class": class,
            "ordinary": wv.ordinary,
            "acyclic": wv.acyclic,
            "tree": wv.tree,
        }));
    }
    text.push_str(&format!("\nset classified up to {up_to}: {}\n", v.class_name()));
    for (name, f) in [("strong", &v.strong), ("weak", &v.weak), ("neutral", &v.neutral), ("acyclic", &v.acyclic), ("tree", &v.tree)] {
        let witness = f.witness.as_ref().map_or(String::new(), |w| format!(" (fails at {})", a.render(w)));
        text.push_str(&format!("  {name:<8} {}{witness}\n", f.holds));
    }
    if let Some(c) = &v.cycle {
        text.push_str(&format!("  cycle    {}\n", cycle_text(a, c)));
    }
    let json = json!({
        "up_to": up_to,
        "class": v.class_name(),
        "strong": flag_json(a, &v.strong),
        "weak": flag_json(a, &v.weak),
        "neutral": flag_json(a, &v.neutral),
        "acyclic": flag_json(a, &v.acyclic),
        "tree": flag_json(a, &v.tree),
        "cycle": v.cycle.as_ref().map(|c| cycle_text(a, c)),
        "words": rows,
    });
    Ok(Output::ok(json, text))
}

fn cycle_text(a: &Alphabet, c: &[bifix_core::extension::Side]) -> String {
    use bifix_core::extension::Side;
    c.iter()
        .map(|s| match *s {
            Side::Left(l) => format!("{}·", a.name(l)),
            Side::Right(l) => format!("·{}", a.name(l)),
        })
        .collect::<Vec<_>>()
        .join(" – ")
}

fn complexity(set: &SetArgs, up_to: Option<usize>) -> Outcome {
    let s = set.load()?.s;
    let p = s.complexity_profile();
    let n = up_to.unwrap_or(p.p.len() - 1).min(p.p.len() - 1);
    let mut text = format!("{:>3} {:>6} {:>4} {:>4}\n", "n", "p_n", "s_n", "b_n");
    for i in 0..=n {
        let cell = |v: Option<&i64>| v.map_or("-".to_string(), |x| x.to_string());
        text.push_str(&format!("{i:>3} {:>6} {:>4} {:>4}\n", p.p[i], cell(p.s.get(i)), cell(p.b.get(i))));
    }
    let affine = p.is_affine(s.k()).then_some(s.k());
    if let Some(k) = affine {
        let k = if k == 1 { String::new() } else { k.to_string() };
        text.push_str(&format!("p_n = {k}n + 1 up to {}\n", p.p.len() - 1));
    }
    let json = json!({"p": &p.p[..=n], "s": &p.s[..n.min(p.s.len())], "b": &p.b[..n.min(p.b.len())], "affine": affine, "horizon": s.horizon()});
    Ok(Output::ok(json, text))
}

fn code_check(set: &OptionalSetArgs, code: &CodeArgs) -> Outcome {
    let loaded = if set.set.is_some() || set.morphism.is_some() || set.factors.is_some() {
        Some(load(set.set.as_deref(), set.morphism.as_ref(), set.factors.as_ref(), set.horizon.unwrap_or(DEFAULT_HORIZON))?)
    } else {
        None
    };
    let alphabet = match (&loaded, &set.alphabet, code.file_alphabet()?) {
        (Some(l), _, _) => l.s.alphabet().clone(),
        (None, Some(names), _) => Alphabet::new(names.iter().cloned())?,
        (None, None, Some(a)) => a,
        (None, None, None) => return Err(usage("give a set, --alphabet or --code-file")),
    };
    let words = code.words(&alphabet)?;
    let p = code_predicates(&words)?;
    let pair = |w: &Option<(Word, Word)>| w.as_ref().map(|(u, v)| [alphabet.render(u), alphabet.render(v)]);
    let mut json = json!({
        "words": words_json(&alphabet, &words),
        "prefix": p.prefix, "suffix": p.suffix, "bifix": p.bifix,
        "prefix_witness": pair(&p.prefix_witness), "suffix_witness": pair(&p.suffix_witness),
    });
    let mut text = format!("prefix {}\nsuffix {}\nbifix  {}\n", p.prefix, p.suffix, p.bifix);
    if let Some([u, v]) = pair(&p.prefix_witness) {
        text.push_str(&format!("  {u} is a proper prefix of {v}\n"));
    }
    if let Some([u, v]) = pair(&p.suffix_witness) {
        text.push_str(&format!("  {u} is a proper suffix of {v}\n"));
    }
    let mut ok = p.bifix;
    if let (Some(l), true) = (&loaded, p.bifix) {
        let x = BifixCode::with_alphabet(words, &alphabet)?;
        if let Some(w) = x.words().iter().find(|w| !l.s.contains(w)) {
            return Err(Error::NotInSet(alphabet.render(w)).into());
        }
        let m = is_s_maximal(&x, &l.s)?;
        let degree = if m.maximal { Some(s_degree(&x, &l.s)?) } else { None };
        let witness = m.witness.as_ref().map(|w| alphabet.render(w));
        text.push_str(&format!("S-maximal {}", m.maximal));
        match (&witness, degree) {
            (Some(w), _) => text.push_str(&format!(" ({w} ∈ S is comparable with no word of X)\n")),
            (None, Some(d)) => text.push_str(&format!("\nS-degree {d}\n")),
            _ => text.push('\n'),
        }
        json["s_maximal"] = json!(m.maximal);
        json["maximality_witness"] = json!(witness);
        json["s_degree"] = json!(degree);
        json["horizon_used"] = json!(m.horizon_used);
        ok &= m.maximal;
    }
    Ok(Output { json, text, dot: None, ok })
}

fn code_degree(set: &SetArgs, code: &CodeArgs, parses: Option<&str>) -> Outcome {
    let s = set.load()?.s;
    let a = s.alphabet();
    let x = code.code(a)?;
    let m = is_s_maximal(&x, &s)?;
    if let Some(w) = m.witness {
        return Err(Error::NotSMaximal(a.render(&w)).into());
    }
    let d = s_degree(&x, &s)?;
    let kernel = x.kernel();
    let mut text = format!("S-degree {d}\nkernel   {{{}}}\n", kernel.render(a));
    let mut rows = Vec::new();
    for w in a.parse_words(parses.unwrap_or(""))? {
        let ps = x.parses(&w);
        let triples: Vec<String> =
            ps.iter().map(|p| format!("({}, {}, {})", a.render(&p.left), a.render(&p.middle), a.render(&p.right))).collect();
        text.push_str(&format!("δ({}) = {}: {}\n", a.render(&w), ps.len(), triples.join(" ")));
        rows.push(json!({
            "word": a.render(&w),
            "count": ps.len(),
            "parses": ps.iter().map(|p| [a.render(&p.left), a.render(&p.middle), a.render(&p.right)]).collect::<Vec<_>>(),
        }));
    }
    let json = json!({"s_degree": d, "kernel": words_json(a, &kernel.lex_sorted()), "parses": rows});
    Ok(Output::ok(json, text))
}

fn transform(set: &SetArgs, code: &CodeArgs, pivot: &str) -> Outcome {
    let s = set.load()?.s;
    let a = s.alphabet();
    let x = code.code(a)?;
    let w = a.parse_word(pivot)?;
    let t = internal_transformation(&x, &s, &w)?;
    let mut json = serde_json::to_value(CodeFile::new(a, &t.code)).expect("serializable");
    let sorted = |set: &std::collections::BTreeSet<Word>| words_json(a, &set.iter().cloned().collect::<Vec<_>>());
    json["pivot"] = json!(a.render(&w));
    json["original_degree"] = json!(t.original_degree);
    json["degree"] = json!(t.degree);
    json["horizon_used"] = json!(t.horizon_used);
    json["bridges"] = sorted(&t.bridges);
    json["parts"] = json!({
        "G": sorted(&t.parts.g), "D": sorted(&t.parts.d),
        "G0": sorted(&t.parts.g0), "D0": sorted(&t.parts.d0),
        "G1": sorted(&t.parts.g1), "D1": sorted(&t.parts.d1),
    });
    Ok(Output::ok(json, format!("{}\n", t.code.render(a))))
}

fn enumerate(set: &SetArgs, degree: usize, max_len: usize) -> Outcome {
    let s = set.load_with(DEFAULT_HORIZON.max(2 * max_len))?.s;
    let a = s.alphabet();
    let codes = enumerate_s_maximal_bifix(&s, degree, max_len)?;
    let mut text = String::new();
    for x in &codes {
        text.push_str(&format!("{:>3}  {}\n", x.len(), x.render(a)));
    }
    text.push_str(&format!("{} codes of S-degree {degree} with words of length at most {max_len}\n", codes.len()));
    let json = json!({
        "degree": degree,
        "max_len": max_len,
        "codes": codes.iter().map(|x| CodeFile::new(a, x)).collect::<Vec<_>>(),
    });
    Ok(Output::ok(json, text))
}

fn decode(set: &SetArgs, code: &CodeArgs, names: Option<&[String]>, max_len: usize) -> Outcome {
    // The horizon the source needs is only known once the code is read.
    let probe = set.load_with(1)?;
    let words = code.words(probe.s.alphabet())?;
    let longest = words.iter().map(|w| w.len()).max().unwrap_or(1);
    let s = if set.factors.is_some() || set.horizon.is_some() {
        probe.s
    } else {
        set.load_with(max_len * longest + longest)?.s
    };
    let a = s.alphabet();
    let names = match names {
        Some(n) => Alphabet::new(n.iter().cloned())?,
        None => Alphabet::new((1..=words.len()).map(|i| i.to_string()))?,
    };
    let f = coding_morphism(&names, &words, a)?;
    let decoded = bifix_decode(&s, &f, max_len)?;
    let b = decoded.alphabet();
    let mut text = String::new();
    for n in 0..=decoded.max_stored_len() {
        let ws = decoded.words_of_length(n);
        text.push_str(&format!("{n:>3} {:>4}  {}\n", ws.len(), b.render_all(ws)));
    }
    Ok(Output::ok(serde_json::to_value(FactorSetFile::new(&decoded)).expect("serializable"), text))
}

fn returns(set: &SetArgs, word: &str, scan: Option<usize>) -> Outcome {
    let loaded = set.load()?;
    let a = loaded.s.alphabet().clone();
    let w = a.parse_word(word)?;
    let rw = match scan {
        Some(len) => loaded
            .fixpoint
            .as_ref()
            .ok_or_else(|| usage("--scan needs a fixpoint (--set or --morphism)"))?
            .return_words(&w, len)?,
        None => return_words_in(&loaded.s, &w)?,
    };
    let words: Vec<Word> = rw.returns.iter().cloned().collect();
    let g = stallings_fold_group(&a, &words.iter().map(GroupWord::from).collect::<Vec<_>>());
    let (index, rank) = (g.index()?, g.rank()?);
    let basis = rank == words.len();
    let text = format!(
        "R({}) = {{{}}}\ncomplete {}\nsubgroup index {index}, rank {rank}, basis {basis}\n",
        a.render(&w),
        a.render_all(&words),
        rw.complete
    );
    let json = json!({
        "word": a.render(&w),
        "returns": words_json(&a, &words),
        "complete": rw.complete,
        "scan_len": rw.scan_len,
        "index": index,
        "rank": rank,
        "basis": basis,
    });
    Ok(Output { json, text, dot: None, ok: rw.complete })
}

fn subgroup(args: &GroupArgs) -> Result<(Alphabet, SubgroupGraph, Option<usize>), Failure> {
    if let Some(path) = &args.graph {
        let file: GraphFile = read_json(path)?;
        let (a, g) = file.graph()?;
        return Ok((a, g, None));
    }
    let names = args.alphabet.as_ref().ok_or_else(|| usage("--alphabet is required"))?;
    let a = Alphabet::new(names.iter().cloned())?;
    let text = read_input(args.words.as_deref().ok_or_else(|| usage("--words or --graph is required"))?)?;
    let gens = text.split_whitespace().map(|t| GroupWord::parse(&a, t)).collect::<Result<Vec<_>, _>>()?;
    let g = stallings_fold_group(&a, &gens);
    Ok((a, g, Some(gens.len())))
}

fn group(query: &GroupQuery) -> Outcome {
    let args = match query {
        GroupQuery::Index(g) | GroupQuery::Rank(g) | GroupQuery::Transversal(g) | GroupQuery::Fold(g) => g,
        GroupQuery::Contains { group, .. } => group,
    };
    let (a, g, gens) = subgroup(args)?;
    let index = g.index()?;
    let rank = g.rank()?;
    let basis = gens.map(|n| n == rank);
    let summary = json!({"index": index, "rank": rank, "vertices": g.vertices, "edges": g.edges.len(), "basis": basis});
    match query {
        GroupQuery::Index(_) | GroupQuery::Rank(_) => {
            let mut text = format!("index {index}\nrank {rank}\n");
            if let Some(b) = basis {
                text.push_str(&format!("basis {b}\n"));
            }
            Ok(Output::ok(summary, text))
        }
        GroupQuery::Contains { element, .. } => {
            let w = GroupWord::parse(&a, element)?;
            let member = g.contains(&w)?;
            let text = format!("{} {} the subgroup\n", w.render(&a), if member { "is in" } else { "is not in" });
            Ok(Output { json: json!({"element": w.render(&a), "member": member}), text, dot: None, ok: member })
        }
        GroupQuery::Transversal(_) => {
            let reps = g.coset_transversal()?;
            let rendered: Vec<String> = reps.iter().map(|r| r.render(&a)).collect();
            Ok(Output::ok(json!({"index": index, "transversal": rendered}), format!("{}\n", rendered.join(" "))))
        }
        GroupQuery::Fold(_) => {
            let file = GraphFile::new(&a, &g);
            let mut text = format!("{} vertices, {} edges, index {index}, rank {rank}\n", g.vertices, g.edges.len());
            for e in &file.edges {
                text.push_str(&format!("  {} -{}-> {}\n", e.source, e.letter, e.target));
            }
            Ok(Output { json: serde_json::to_value(file).expect("serializable"), text, dot: Some(g.to_dot(&a)), ok: true })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate { set, prefix } => generate(set, *prefix),
        Command::Classify { set, up_to, word } => classify(set, *up_to, word.as_deref()),
        Command::Complexity { set, up_to } => complexity(set, *up_to),
        Command::CodeCheck { set, code } => code_check(set, code),
        Command::CodeDegree { set, code, parses } => code_degree(set, code, parses.as_deref()),
        Command::Transform { set, code, pivot } => transform(set, code, pivot),
        Command::Enumerate { set, degree, max_len } => enumerate(set, *degree, *max_len),
        Command::Decode { set, code, names, max_len } => decode(set, code, names.as_deref(), *max_len),
        Command::Returns { set, word, scan } => returns(set, word, *scan),
        Command::Group { query } => group(query),
        Command::Verify { horizon, max_len, max_degree, uniform_up_to, classify_up_to, return_len, sets, parallel } => {
            let config = SuiteConfig {
                horizon: *horizon,
                max_len: *max_len,
                max_degree: *max_degree,
                uniform_up_to: *uniform_up_to,
                classify_up_to: *classify_up_to,
                return_len: *return_len,
                sets: sets.clone(),
                parallel: *parallel,
            };
            let report = run_suite(&config)?;
            Ok(Output {
                json: serde_json::to_value(&report).expect("serializable"),
                text: report.render_text(),
                dot: None,
                ok: report.is_clean(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
                Format::Dot => match &out.dot {
                    Some(d) => print!("{d}"),
                    None => {
                        eprintln!("error: --format dot is only available for `group fold`");
                        return ExitCode::from(2);
                    }
                },
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
