//! Parity tree automata over regular infinite binary trees: membership games,
//! ambiguity-preserving constructions and accepting-run cardinality classification.

pub mod ambiguity;
pub mod automata;
pub mod games;
pub mod membership;
pub mod trees;
pub mod zoo;

pub use ambiguity::{classify, AmbiguityVerdict, RegenerationWitness, WitnessMode};
pub use automata::{Dpw, FiniteLabeledTree, Fta, Pta, Transition};
pub use games::{Arena, Player, WinningAnalysis};
pub use membership::{member, MembershipGame, PathfinderStrategyTree, RegularRun};
pub use trees::{Dir, MooreMachine, NodePath, RegularAntichain, RegularTree};
