//! Function-spec grammar and loaders.
//!
//! Specs name a function source:
//!
//! - `zoo:<name>,<k=v>,...` — a classic function, e.g.
//!   `zoo:dictator,m=3,i=1`, `zoo:majority,m=5`, `zoo:random,m=8,seed=42`,
//!   `zoo:tribes_bl,b=2,s=3`, `zoo:constant,m=4,v=1`.
//! - `file:<path>` — a truth-table file (see [`crate::tablefmt`]).
//! - `tribes-ce:n=<int>,seed=<int>` — a sampled counterexample instance,
//!   or `tribes-ce:file=<path>` for an explicit instance JSON
//!   `{"n":..,"seed":..,"tribes":[[..],..]}`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hyperiso_core::constructions::{self, TribesInstance, ZooSpec};
use hyperiso_core::BooleanFunction;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::tablefmt;

/// A parsed function spec.
#[derive(Clone, Debug)]
pub enum FuncSpec {
    Zoo(ZooSpec),
    File(PathBuf),
    TribesCe { n: u64, seed: u64 },
    TribesCeFile(PathBuf),
}

/// A loaded function plus the instance it came from, when any.
pub struct LoadedFunction {
    pub function: BooleanFunction,
    pub instance: Option<TribesInstance>,
}

/// Serialized form of a [`TribesInstance`].
#[derive(Serialize, Deserialize)]
pub struct InstanceJson {
    pub n: u64,
    pub seed: u64,
    pub tribes: Vec<Vec<u32>>,
}

impl InstanceJson {
    pub fn of(inst: &TribesInstance) -> Self {
        InstanceJson {
            n: inst.n() as u64,
            seed: inst.seed(),
            tribes: inst.tribes().to_vec(),
        }
    }
}

fn parse_kv(pairs: &[&str], spec: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for raw in pairs {
        let (k, v) = raw.split_once('=').ok_or_else(|| {
            CliError::usage(format!("expected key=value, got `{raw}` in `{spec}`"))
        })?;
        if map
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            return Err(CliError::usage(format!("duplicate key `{k}` in `{spec}`")));
        }
    }
    Ok(map)
}

struct Params {
    map: BTreeMap<String, String>,
    spec: String,
}

impl Params {
    fn take<T: std::str::FromStr>(&mut self, key: &str) -> CliResult<T> {
        let raw = self
            .map
            .remove(key)
            .ok_or_else(|| CliError::usage(format!("missing `{key}=` in `{}`", self.spec)))?;
        raw.parse()
            .map_err(|_| CliError::usage(format!("cannot parse `{key}={raw}` in `{}`", self.spec)))
    }

    fn finish(self) -> CliResult<()> {
        if let Some(key) = self.map.into_keys().next() {
            return Err(CliError::usage(format!(
                "unknown key `{key}` in `{}`",
                self.spec
            )));
        }
        Ok(())
    }
}

/// Parses the spec grammar; errors name the offending token.
pub fn parse_func_spec(spec: &str) -> CliResult<FuncSpec> {
    if let Some(path) = spec.strip_prefix("file:") {
        if path.is_empty() {
            return Err(CliError::usage(format!("empty path in `{spec}`")));
        }
        return Ok(FuncSpec::File(PathBuf::from(path)));
    }
    if let Some(rest) = spec.strip_prefix("tribes-ce:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() == 1 {
            if let Some(path) = parts[0].strip_prefix("file=") {
                return Ok(FuncSpec::TribesCeFile(PathBuf::from(path)));
            }
        }
        let mut p = Params {
            map: parse_kv(&parts, spec)?,
            spec: spec.to_string(),
        };
        let n: u64 = p.take("n")?;
        let seed: u64 = p.take("seed")?;
        p.finish()?;
        return Ok(FuncSpec::TribesCe { n, seed });
    }
    if let Some(rest) = spec.strip_prefix("zoo:") {
        let mut parts = rest.split(',');
        let name = parts
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| CliError::usage(format!("missing zoo name in `{spec}`")))?;
        let kv: Vec<&str> = parts.collect();
        let mut p = Params {
            map: parse_kv(&kv, spec)?,
            spec: spec.to_string(),
        };
        let zoo = match name {
            "constant" => {
                let m = p.take("m")?;
                let v: u8 = p.take("v")?;
                if v > 1 {
                    return Err(CliError::usage(format!("`v` must be 0 or 1 in `{spec}`")));
                }
                ZooSpec::Constant { m, value: v == 1 }
            }
            "dictator" => ZooSpec::Dictator {
                m: p.take("m")?,
                i: p.take("i")?,
            },
            "anti_dictator" => ZooSpec::AntiDictator {
                m: p.take("m")?,
                i: p.take("i")?,
            },
            "parity" => ZooSpec::Parity { m: p.take("m")? },
            "majority" => ZooSpec::Majority { m: p.take("m")? },
            "tribes_bl" => ZooSpec::TribesBl {
                width: p.take("b")?,
                count: p.take("s")?,
            },
            "random" => ZooSpec::Random {
                m: p.take("m")?,
                seed: p.take("seed")?,
            },
            other => {
                return Err(CliError::usage(format!(
                    "unknown zoo function `{other}` in `{spec}`"
                )))
            }
        };
        p.finish()?;
        return Ok(FuncSpec::Zoo(zoo));
    }
    Err(CliError::usage(format!(
        "unrecognized spec `{spec}` (expected zoo:..., file:..., or tribes-ce:...)"
    )))
}

/// Loads an instance JSON file.
pub fn load_instance_file(path: &Path) -> CliResult<TribesInstance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let json: InstanceJson = serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    Ok(TribesInstance::from_parts(json.n, json.seed, json.tribes)?)
}

/// Resolves a spec into a materialized function (plus the instance for
/// tribes specs).
pub fn load_function(spec: &FuncSpec) -> CliResult<LoadedFunction> {
    match spec {
        FuncSpec::Zoo(z) => Ok(LoadedFunction {
            function: constructions::zoo(z)?,
            instance: None,
        }),
        FuncSpec::File(path) => Ok(LoadedFunction {
            function: tablefmt::read_table(path)?,
            instance: None,
        }),
        FuncSpec::TribesCe { n, seed } => {
            let inst = TribesInstance::sample(*n, *seed)?;
            let function = inst.to_function()?;
            Ok(LoadedFunction {
                function,
                instance: Some(inst),
            })
        }
        FuncSpec::TribesCeFile(path) => {
            let inst = load_instance_file(path)?;
            let function = inst.to_function()?;
            Ok(LoadedFunction {
                function,
                instance: Some(inst),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_specs_parse() {
        assert!(matches!(
            parse_func_spec("zoo:dictator,m=3,i=1").unwrap(),
            FuncSpec::Zoo(ZooSpec::Dictator { m: 3, i: 1 })
        ));
        assert!(matches!(
            parse_func_spec("zoo:parity,m=2").unwrap(),
            FuncSpec::Zoo(ZooSpec::Parity { m: 2 })
        ));
        assert!(matches!(
            parse_func_spec("zoo:tribes_bl,b=2,s=3").unwrap(),
            FuncSpec::Zoo(ZooSpec::TribesBl { width: 2, count: 3 })
        ));
        assert!(matches!(
            parse_func_spec("zoo:random,m=8,seed=42").unwrap(),
            FuncSpec::Zoo(ZooSpec::Random { m: 8, seed: 42 })
        ));
    }

    #[test]
    fn tribes_and_file_specs_parse() {
        assert!(matches!(
            parse_func_spec("tribes-ce:n=4,seed=7").unwrap(),
            FuncSpec::TribesCe { n: 4, seed: 7 }
        ));
        assert!(matches!(
            parse_func_spec("file:tables/f.json").unwrap(),
            FuncSpec::File(_)
        ));
        assert!(matches!(
            parse_func_spec("tribes-ce:file=inst.json").unwrap(),
            FuncSpec::TribesCeFile(_)
        ));
    }

    #[test]
    fn errors_name_the_token() {
        let err = parse_func_spec("zoo:dictator,m=3,j=1").unwrap_err();
        assert!(err.to_string().contains("`i="), "{err}");
        let err = parse_func_spec("zoo:nosuch,m=3").unwrap_err();
        assert!(err.to_string().contains("nosuch"), "{err}");
        let err = parse_func_spec("zoo:parity,m=2,extra=1").unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
        let err = parse_func_spec("blah:1").unwrap_err();
        assert!(err.to_string().contains("blah"), "{err}");
        let err = parse_func_spec("zoo:parity,m=x").unwrap_err();
        assert!(err.to_string().contains("m=x"), "{err}");
        assert_eq!(err.exit_code(), 2);
    }
}
