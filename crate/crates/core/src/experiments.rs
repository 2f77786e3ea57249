//! Seeded Monte Carlo experiments (placeholder while modules land).
