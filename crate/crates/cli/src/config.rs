use kpeterson::quantum::DepthSchedule;
use kpeterson::{Error, Result, RootDatum};

/// Depth multiplier at which stabilization stops being attempted.
pub const DEPTH_CAP: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub type_tag: Option<String>,
    pub radius: i32,
    pub depth: u32,
    pub format: Format,
    pub cache: bool,
}

impl SessionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radius < 1 {
            return Err(Error::Config(format!("window radius must be at least 1, got {}", self.radius)));
        }
        if self.depth < 1 || self.depth >= DEPTH_CAP {
            return Err(Error::Config(format!("N must lie in 1..{DEPTH_CAP}, got {}", self.depth)));
        }
        Ok(())
    }

    pub fn datum(&self) -> Result<RootDatum> {
        match &self.type_tag {
            Some(tag) => RootDatum::from_tag(tag),
            None => Err(Error::Config("no root system given; pass --type or set KPETERSON_TYPE".into())),
        }
    }

    pub fn schedule(&self) -> DepthSchedule {
        DepthSchedule { start: self.depth, cap: DEPTH_CAP, radius: self.radius }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SessionConfig {
        SessionConfig { type_tag: Some("A2".into()), radius: 4, depth: 2, format: Format::Json, cache: true }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(base().validate().is_ok());
        assert!(SessionConfig { radius: 0, ..base() }.validate().is_err());
        assert!(SessionConfig { depth: 0, ..base() }.validate().is_err());
        assert!(SessionConfig { depth: DEPTH_CAP, ..base() }.validate().is_err());
    }

    #[test]
    fn missing_type_is_a_config_error() {
        let c = SessionConfig { type_tag: None, ..base() };
        assert!(matches!(c.datum(), Err(Error::Config(_))));
    }
}
