use clap::ValueEnum;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum GenFormat {
    /// `{"m":..,"bits":"0101..."}` — readable, arity up to 16.
    JsonBits,
    /// `{"m":..,"raw":"<file>.bits"}` plus a packed byte file.
    Raw,
}
