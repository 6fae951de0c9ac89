use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "halfpoint", version, about = "Exact 2-division quartics of points on Weierstrass cubics")]
pub struct Cli {
    /// Field descriptor: `q`, `fp:<p>` or `qext:<base>:<d>`.
    #[arg(long, global = true, default_value = "q", allow_hyphen_values = true)]
    pub field: String,

    /// Emit the JSON response instead of aligned text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Division quartic of a point.
    Divide(DivideArgs),
    /// Curve and point whose division quartic is the given quartic.
    Reconstruct(ReconstructArgs),
    /// Root profile and division geometry.
    Classify(ClassifyArgs),
    /// Base-field points that double to the given point.
    Halves(PairArgs),
    /// `a(q)`, `e(q)` and the root profile of a quartic.
    Invariants(QuarticArgs),
    /// Rescale roots by `e(q)` so that the new `e` is a square.
    Rescale(QuarticArgs),
    /// Orbit product and `e` of an element of a Galois quartic extension.
    Galois(GaloisArgs),
    /// Exhaustive sweeps over a small prime field.
    Oracle(OracleArgs),
    /// Mean and covariance description of a point through its four halves.
    StatsCheck(PairArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Curve coefficients `a,b,c` of `y^2 = x^3 + a x^2 + b x + c`.
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// `x,y` or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Args, Debug, Clone)]
pub struct DivideArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Emit the homogeneous form in `(X:Z)`; implied by `--point inf`.
    #[arg(long)]
    pub homogeneous: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct QuarticInput {
    /// Monic quartic `d3,d2,d1,d0`, or `d4,d3,d2,d1,d0` with `--homogeneous`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "hquartic")]
    pub quartic: Option<String>,
    /// Homogeneous quartic `d4,d3,d2,d1,d0`.
    #[arg(long, allow_hyphen_values = true)]
    pub hquartic: Option<String>,
    /// Read `--quartic` as five homogeneous coefficients.
    #[arg(long)]
    pub homogeneous: bool,
}

#[derive(Args, Debug, Clone)]
pub struct QuarticArgs {
    /// Monic quartic `d3,d2,d1,d0`.
    #[arg(long, allow_hyphen_values = true)]
    pub quartic: String,
}

#[derive(Args, Debug, Clone)]
pub struct ReconstructArgs {
    #[command(flatten)]
    pub input: QuarticInput,
    /// Which square test the gate verdict reports.
    #[arg(long, value_enum, default_value_t = Convention::MinusE)]
    pub sign_convention: Convention,
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true, requires = "point", conflicts_with_all = ["quartic", "hquartic"])]
    pub curve: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "curve")]
    pub point: Option<String>,
    #[command(flatten)]
    pub input: QuarticInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Accept when `-e(q)` is a square.
    MinusE,
    /// Accept when `e(q)` is a square.
    PlusE,
    /// Report both verdicts.
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtensionType {
    Biquadratic,
    Cyclic,
}

#[derive(Args, Debug, Clone)]
pub struct GaloisArgs {
    #[arg(long = "type", value_enum)]
    pub kind: ExtensionType,
    /// `A,B` for biquadratic, `k` for cyclic.
    #[arg(long, allow_hyphen_values = true)]
    pub params: String,
    /// Coordinates `a,b,c,d`; defaults to a primitive element with `e != 0`.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sweep {
    Gate,
    Classify,
    Torsion,
    Stats,
    Halves,
    Roundtrip,
    Homogeneous,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub sweep: Sweep,
    #[arg(long, default_value_t = 7)]
    pub prime: u64,
    /// For `gate`: the convention whose discrepancies decide the exit status;
    /// `both` only reports.
    #[arg(long, value_enum, default_value_t = Convention::MinusE)]
    pub sign_convention: Convention,
}
