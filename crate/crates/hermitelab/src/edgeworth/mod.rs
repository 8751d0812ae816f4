//! Cumulants via set partitions, Edgeworth corrections to the central limit
//! theorem in one and several dimensions, and the correlated-ReLU layer
//! examples with KDE/KL evaluation.

pub mod density;
pub mod kde;
pub mod partitions;
pub mod samples;

pub use density::{
    edgeworth_density_1d, edgeworth_density_multi, edgeworth_next_order_1d, gaussian_multi,
    CumulantTensor,
};
pub use kde::{
    kde_density_1d, kde_density_2d, kl_divergence_1d, kl_divergence_2d, silverman_bandwidth_1d,
    DensityTable1d, DensityTable2d, GridSpec,
};
pub use partitions::{joint_cumulant, set_partitions, SetPartition};
pub use samples::{
    index_factorial, jbar, relu_cumulants_2d, relu_layer_sample_1d, relu_layer_sample_2d,
    ReluCumulants, SampleBatch,
};
