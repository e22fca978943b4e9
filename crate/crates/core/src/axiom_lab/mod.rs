//! Verification campaigns: the closure-independence models, the
//! power-join star on finite quantales, and batch runs of every law suite.

mod campaign;
mod independence;
mod quantale;

pub use campaign::{run_campaign, CampaignConfig, CellSpec, Suite};
pub use independence::{verify_independence, verify_independence_model, IndependenceModel, INDEPENDENCE_MODELS};
pub use quantale::{power_join_star, verify_quantale_star};
