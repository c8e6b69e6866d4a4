use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "symdyn", version, about = "Exact certificates for low-complexity subshifts and finite permutation systems")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    #[command(flatten)]
    pub limits: LimitArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Emit the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit the report as flattened `field,value` CSV rows.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Include matrices and per-cylinder detail.
    #[arg(long, global = true)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Longest word length the language may be enumerated at.
    #[arg(long, global = true, default_value_t = 1024)]
    pub max_level: usize,

    /// Largest number of words in one level.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    pub max_words: usize,

    /// Largest number of window words in a certificate matrix.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub max_ambient: usize,

    /// Longest generated word (standard words, substitution iterates).
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub max_generated: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    CommonFactor,
    Coprime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChooserArg {
    RightSpecial,
    FirstRightSpecial,
    FirstWord,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complexity p(n) for 1 ≤ n ≤ max-n.
    Complexity {
        spec: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Right-special words Q_n and their extensions Q'_{n+1}.
    Special {
        spec: String,
        #[arg(long)]
        n: usize,
    },
    /// Good scales below max-n and the finite-scale complexity bound.
    GoodScales {
        spec: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
    },
    /// Decompose [word] into shifted cylinders of Q'_{n+1} words.
    Decompose {
        spec: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Check the partition exhaustively on the covering window.
        #[arg(long)]
        verify: bool,
    },
    /// Multiplicity bound 2k at scale n with per-cylinder certificates.
    MultBound {
        spec: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Rank certificate {1, f∘σ^k : k < n} = n+1 for a Sturmian spec.
    SturmianCert {
        spec: String,
        #[arg(long)]
        max_n: usize,
    },
    /// Birkhoff decay table for the Thue–Morse tower function at level n.
    TmEvidence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: usize,
        /// First p of the smoothed monotonicity check.
        #[arg(long, default_value_t = 4)]
        from: usize,
        /// Compare dev(q) with dev(p) only when q ≥ factor·p.
        #[arg(long, default_value_t = 2)]
        factor: usize,
    },
    /// Number of ergodic measures of a permutation via coboundaries.
    PermMult { perm: String },
    /// Embedding plan of the measure simplex.
    PermEmbed {
        perm: String,
        /// Check injectivity exactly on one period.
        #[arg(long)]
        certify: bool,
        /// Build the plan of this case instead of the one the gcd rule picks.
        #[arg(long, value_enum)]
        force_case: Option<CaseArg>,
    },
    /// Dimension of the fixed simplex of T_*^p.
    FixDim {
        perm: String,
        #[arg(long)]
        p: usize,
    },
    /// Period growth and |v_n| μ̂([w_n]) along chosen words.
    Keylem {
        spec: String,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
        #[arg(long, value_enum, default_value_t = ChooserArg::RightSpecial)]
        chooser: ChooserArg,
    },
}
