//! Executable checks: the box axioms, the classical oracle, mutual
//! simulation of the two processors, and static explanations of
//! transcripts.

pub mod axioms;
pub mod consistency;
pub mod equivalence;
pub mod oracle;
pub mod oracle_diff;
pub mod prf;

pub use axioms::{
    check_axioms, exhaustive_canonical, random_canonical, sample_states, Axiom, AxiomReport,
    AxiomResult, Counterexample,
};
pub use consistency::{
    build_consistent_static, ConsistencyCertificate, ConsistencyError, StaticAcceptor,
};
pub use equivalence::{
    accepted_configurations, sbox_witness, tbox_witness, EquivalenceDirection, EquivalenceError,
    EquivalenceWitness, WitnessGoal,
};
pub use oracle::{classical_tm_oracle, OracleError, OracleVerdict};
pub use oracle_diff::{
    oracle_diff_brute_force, oracle_diff_exhaustive, OracleDiffReport, ProcedureSpace,
};
pub use prf::{left_returning_ones_then_zero, theorem_prf_check, PrfReport};
