use cartmatch::multi::MatchAutomaton;
use cartmatch::signature::{SignatureMatcher, SignaturePattern};
use cartmatch::single::{FailureFunction, Matcher};
use cartmatch::suffixtree::CartesianSuffixTree;
use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Failure-function search, one matcher per pattern.
    Kmp,
    /// Same search driven by pop-count signatures.
    Signature,
    /// Aho-Corasick automaton over all patterns.
    Automaton,
    /// Cartesian suffix tree built over the whole text.
    Index,
}

impl Engine {
    pub const ALL: [Engine; 4] = [Engine::Kmp, Engine::Signature, Engine::Automaton, Engine::Index];
}

/// One reported occurrence; both fields 1-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Hit {
    pub position: usize,
    pub pattern: usize,
}

/// Runs `engine` over a text stream. Hits are sorted by position, then
/// pattern id. Patterns must be nonempty.
pub fn run<I>(engine: Engine, text: I, patterns: &[Vec<i64>]) -> Result<Vec<Hit>, CliError>
where
    I: IntoIterator<Item = Result<i64, CliError>>,
{
    let mut hits = Vec::new();
    match engine {
        Engine::Kmp => {
            let ffs = patterns
                .iter()
                .map(|p| FailureFunction::new(p))
                .collect::<Result<Vec<_>, _>>()?;
            let mut matchers: Vec<Matcher> = ffs.iter().map(Matcher::new).collect();
            for c in text {
                let c = c?;
                for (j, m) in matchers.iter_mut().enumerate() {
                    if let Some(position) = m.advance(c) {
                        hits.push(Hit { position, pattern: j + 1 });
                    }
                }
            }
        }
        Engine::Signature => {
            let sps = patterns
                .iter()
                .map(|p| SignaturePattern::new(p))
                .collect::<Result<Vec<_>, _>>()?;
            let mut matchers: Vec<SignatureMatcher> = sps.iter().map(SignatureMatcher::new).collect();
            for c in text {
                let c = c?;
                for (j, m) in matchers.iter_mut().enumerate() {
                    if let Some(position) = m.advance(c) {
                        hits.push(Hit { position, pattern: j + 1 });
                    }
                }
            }
        }
        Engine::Automaton => {
            let automaton = MatchAutomaton::new(patterns)?;
            let mut matcher = automaton.searcher();
            for c in text {
                let c = c?;
                hits.extend(matcher.advance(c).map(|m| Hit {
                    position: m.position,
                    pattern: m.pattern,
                }));
            }
        }
        Engine::Index => {
            if patterns.iter().any(Vec::is_empty) {
                return Err(cartmatch::Error::EmptyPattern.into());
            }
            let text = text.into_iter().collect::<Result<Vec<_>, _>>()?;
            let tree = CartesianSuffixTree::build(&text);
            for (j, p) in patterns.iter().enumerate() {
                for position in tree.query(p)? {
                    hits.push(Hit { position, pattern: j + 1 });
                }
            }
        }
    }
    hits.sort_unstable();
    Ok(hits)
}
