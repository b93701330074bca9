//! Time-frequency analysis over tri-tile populations: coefficients, decay
//! weights, sizes, energies, stopping-time decompositions, the discretized
//! trilinear form, and the size/energy majorant of the general estimate.

pub mod antichain;
pub mod certificate;
pub mod coefficients;
pub mod decompose;
pub mod distance;
pub mod energy;
pub mod phi;
pub mod size;
pub mod trilinear;

pub use antichain::{max_weight_antichain, max_weight_antichain_brute_force, AntichainResult};
pub use certificate::{
    energy_records, global_records, read_records, write_records, CertificateRecord,
};
pub use coefficients::{coefficients, TileCoefficients};
pub use decompose::{
    decompose_size1, decompose_size2, decompose_size3, global_decompose, Decomposition,
    GlobalDecomposition, LevelBucket,
};
pub use distance::{partition_by_distance, DistancePartition};
pub use energy::{energy12, energy3, EnergyCertificate, EnergyMode, EnergyRealizer, LevelGrid};
pub use phi::{certify_overlap_constant, PhiWeight, DEFAULT_DECAY};
pub use size::{all_sizes, size1, size2, size3, size_axis, Size3Engine};
pub use trilinear::{
    column_row_bound, dual_h, extra_term, general_estimate_rhs, sup_variation_averages,
    trilinear_continuous, trilinear_discrete, SizeEnergyReport,
};
