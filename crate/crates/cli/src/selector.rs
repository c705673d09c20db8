//! Names of the structures the tool can build or load.

use std::fmt;
use std::path::PathBuf;

use klein_grassmannian::export::from_json;
use klein_grassmannian::{build_grassmannian, off_quadric_structure, IncidenceStructure, QuadraticForm};

use crate::CliError;

/// `off-structure`, `grassmannian K N` (or `grassmannian:K:N`), `heptads`,
/// `sequence`, or a path to a JSON structure file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    OffStructure,
    Grassmannian { k: usize, n: usize },
    Heptads,
    Sequence,
    File(PathBuf),
}

impl Selector {
    /// Parses one selector from the front of `words`, returning it together
    /// with the number of words consumed.
    pub fn parse_prefix(words: &[String]) -> Result<(Selector, usize), CliError> {
        let first = words
            .first()
            .ok_or_else(|| CliError::Malformed("missing structure selector".into()))?;
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| CliError::Malformed(format!("`{s}` is not a number")))
        };
        if let Some(rest) = first.strip_prefix("grassmannian:") {
            let (k, n) = rest
                .split_once(':')
                .ok_or_else(|| CliError::Malformed(format!("expected grassmannian:K:N, got `{first}`")))?;
            return Ok((Selector::Grassmannian { k: number(k)?, n: number(n)? }, 1));
        }
        match first.as_str() {
            "off-structure" => Ok((Selector::OffStructure, 1)),
            "heptads" => Ok((Selector::Heptads, 1)),
            "sequence" => Ok((Selector::Sequence, 1)),
            "grassmannian" => {
                if words.len() < 3 {
                    return Err(CliError::Malformed("expected `grassmannian K N`".into()));
                }
                Ok((
                    Selector::Grassmannian {
                        k: number(&words[1])?,
                        n: number(&words[2])?,
                    },
                    3,
                ))
            }
            other if other.ends_with(".json") => Ok((Selector::File(other.into()), 1)),
            other => Err(CliError::UnknownSelector(other.to_owned())),
        }
    }

    /// Parses exactly one selector from `words`.
    pub fn parse(words: &[String]) -> Result<Selector, CliError> {
        let (sel, used) = Self::parse_prefix(words)?;
        if used != words.len() {
            return Err(CliError::Malformed(format!(
                "unexpected arguments after selector: {:?}",
                &words[used..]
            )));
        }
        Ok(sel)
    }

    /// Builds or loads the incidence structure this selector names.
    pub fn structure(&self) -> Result<IncidenceStructure, CliError> {
        match self {
            Selector::OffStructure => Ok(off_quadric_structure(&QuadraticForm::canonical_hyperbolic())),
            Selector::Grassmannian { k, n } => {
                build_grassmannian(*k, *n).map_err(|e| CliError::Malformed(e.to_string()))
            }
            Selector::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                from_json(&text).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
            }
            Selector::Heptads | Selector::Sequence => Err(CliError::UnknownSelector(format!(
                "{self} does not name a single structure"
            ))),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::OffStructure => f.write_str("off-structure"),
            Selector::Grassmannian { k, n } => write!(f, "grassmannian {k} {n}"),
            Selector::Heptads => f.write_str("heptads"),
            Selector::Sequence => f.write_str("sequence"),
            Selector::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    #[test]
    fn parses_selectors() {
        assert_eq!(Selector::parse(&words("off-structure")).unwrap(), Selector::OffStructure);
        assert_eq!(
            Selector::parse(&words("grassmannian 2 8")).unwrap(),
            Selector::Grassmannian { k: 2, n: 8 }
        );
        assert_eq!(
            Selector::parse(&words("grassmannian:2:5")).unwrap(),
            Selector::Grassmannian { k: 2, n: 5 }
        );
        assert_eq!(
            Selector::parse_prefix(&words("grassmannian 2 4 grassmannian 2 5")).unwrap(),
            (Selector::Grassmannian { k: 2, n: 4 }, 3)
        );
        assert!(matches!(
            Selector::parse(&words("octonions")),
            Err(CliError::UnknownSelector(_))
        ));
        assert!(matches!(
            Selector::parse(&words("grassmannian 2")),
            Err(CliError::Malformed(_))
        ));
        assert!(matches!(
            Selector::parse(&words("grassmannian:two:5")),
            Err(CliError::Malformed(_))
        ));
        assert!(matches!(
            Selector::parse(&words("heptads extra")),
            Err(CliError::Malformed(_))
        ));
    }

    #[test]
    fn invalid_arity_is_malformed() {
        let sel = Selector::Grassmannian { k: 0, n: 3 };
        assert!(matches!(sel.structure(), Err(CliError::Malformed(_))));
    }
}
