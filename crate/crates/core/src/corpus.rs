//! Instances bundled into the binary.

use crate::error::Result;
use crate::instance::InstanceFile;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

/// `(name, JSON text)` for every bundled instance, in run order.
pub const SOURCES: &[(&str, &str)] = bundled![
    "heart",
    "heart_naive",
    "heart_broken_sign",
    "football_p2",
    "football_p3",
    "football_p5",
    "sphere_trivial",
    "torus_z2",
    "ellipsoid_trivial",
    "ellipsoid_rot_x",
    "ellipsoid_rot_y",
    "ellipsoid_rot_z",
    "d_squared_fail",
    "disc_rot_2",
    "disc_rot_3",
    "disc_rot_4",
    "disc_reflect",
    "disc_reflect_d1",
    "heart_bundle",
    "football_p2_bundle",
    "football_p3_bundle",
    "football_p5_bundle",
    "sphere_trivial_bundle",
    "torus_z2_bundle",
    "ellipsoid_rot_x_bundle",
    "ellipsoid_rot_y_bundle",
    "ellipsoid_rot_z_bundle",
];

pub fn source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Option<Result<InstanceFile>> {
    source(name).map(InstanceFile::parse)
}

pub fn files() -> Result<Vec<InstanceFile>> {
    SOURCES.iter().map(|(_, s)| InstanceFile::parse(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_files() {
        for (name, text) in SOURCES {
            assert_eq!(InstanceFile::parse(text).unwrap().name, *name);
        }
        assert_eq!(SOURCES.len(), std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus")).unwrap().count());
    }
}
