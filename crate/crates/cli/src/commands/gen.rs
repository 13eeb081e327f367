//! `gen`: materialize a function spec into a truth-table file.

use std::path::Path;

use crate::error::CliResult;
use crate::main_args::GenFormat;
use crate::spec;
use crate::tablefmt;

pub fn run(spec_str: &str, out: &Path, format: GenFormat) -> CliResult<()> {
    let parsed = spec::parse_func_spec(spec_str)?;
    let f = spec::load_function(&parsed)?.function;
    match format {
        GenFormat::JsonBits => tablefmt::write_json_bits(&f, out),
        GenFormat::Raw => tablefmt::write_raw(&f, out),
    }
}
