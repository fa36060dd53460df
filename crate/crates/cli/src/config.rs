//! Flat `key = value` config files with `[sections]`. Flags always win.
//!
//! ```text
//! [params]
//! mass = 1
//! hbar = 1
//! gamma = 0.4
//! omega = 1
//!
//! [run]
//! tol = 1e-10
//! seed = 7
//! format = json
//! ```
//!
//! `[params]` also accepts `omega_cap` and `omega_tilde`; `[simulate]` takes
//! `x`, `p_x`, `y`, `p_y`, `t_end`, `x0`, `v0`; `[spectrum]` takes `regime`,
//! `first`, `lambda`, `samples`.

use std::path::Path;
use std::str::FromStr;

use ini::Ini;

use crate::CliError;

const KNOWN: &[(&str, &[&str])] = &[
    ("params", &["mass", "hbar", "gamma", "omega", "omega_cap", "omega_tilde"]),
    ("run", &["tol", "seed", "format", "out"]),
    ("simulate", &["x", "p_x", "y", "p_y", "t_end", "x0", "v0", "summary"]),
    ("spectrum", &["regime", "first", "lambda", "samples"]),
];

#[derive(Debug, Default)]
pub struct ConfigFile {
    ini: Option<Ini>,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let ini = Ini::load_from_file(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        for (section, props) in ini.iter() {
            let Some(section) = section else {
                if let Some((k, _)) = props.iter().next() {
                    return Err(CliError::Usage(format!("config key `{k}` must sit inside a [section]")));
                }
                continue;
            };
            let keys = KNOWN
                .iter()
                .find(|(s, _)| *s == section)
                .map(|(_, k)| *k)
                .ok_or_else(|| CliError::Usage(format!("unknown config section [{section}]")))?;
            for (k, _) in props.iter() {
                if !keys.contains(&k) {
                    return Err(CliError::Usage(format!("unknown config key `{k}` in [{section}]")));
                }
            }
        }
        Ok(Self { ini: Some(ini) })
    }

    pub fn raw(&self, section: &str, key: &str) -> Option<&str> {
        self.ini.as_ref()?.section(Some(section))?.get(key)
    }

    pub fn get<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, CliError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some(v) => v
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("bad value `{v}` for [{section}] {key}"))),
        }
    }

    /// `flag`, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, section: &str, key: &str, default: T) -> Result<T, CliError> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(section, key)?.unwrap_or(default),
        })
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, section: &str, key: &str) -> Result<Option<T>, CliError> {
        Ok(match flag {
            Some(v) => Some(v),
            None => self.get(section, key)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn flags_win_over_file() {
        let f = file("[params]\ngamma = 0.7\nmass = 2\n");
        let c = ConfigFile::load(Some(f.path())).unwrap();
        assert_eq!(c.pick(Some(0.1), "params", "gamma", 0.4).unwrap(), 0.1);
        assert_eq!(c.pick(None, "params", "gamma", 0.4).unwrap(), 0.7);
        assert_eq!(c.pick(None, "params", "hbar", 1.0).unwrap(), 1.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let f = file("[params]\ngama = 0.7\n");
        assert!(ConfigFile::load(Some(f.path())).is_err());
        let f = file("[nope]\na = 1\n");
        assert!(ConfigFile::load(Some(f.path())).is_err());
        let f = file("gamma = 1\n");
        assert!(ConfigFile::load(Some(f.path())).is_err());
    }

    #[test]
    fn bad_values_are_usage_errors() {
        let f = file("[run]\nseed = seven\n");
        let c = ConfigFile::load(Some(f.path())).unwrap();
        assert!(matches!(c.get::<u64>("run", "seed"), Err(CliError::Usage(_))));
    }
}
