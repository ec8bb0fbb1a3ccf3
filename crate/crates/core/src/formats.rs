//! JSON forms of the core types.
//!
//! Sets are ascending element lists. Reading validates: a collection must be
//! over a valid ground set, a cubillage must pass [`Cubillage::validate`],
//! and a membrane must project to a cubillage. Unknown fields are ignored.

use serde::{Deserialize, Serialize};

use crate::cubillage::{Cube, Cubillage};
use crate::error::{Error, Result};
use crate::membrane::Membrane;
use crate::setcalc::{Collection, SubsetMask};

fn set(n: usize, elements: &[usize]) -> Result<SubsetMask> {
    SubsetMask::from_elements(n, elements)
}

#[derive(Serialize, Deserialize)]
pub(crate) struct CollectionJson {
    n: usize,
    sets: Vec<Vec<usize>>,
}

impl From<Collection> for CollectionJson {
    fn from(c: Collection) -> Self {
        CollectionJson {
            n: c.n(),
            sets: c.to_lists(),
        }
    }
}

impl TryFrom<CollectionJson> for Collection {
    type Error = Error;

    fn try_from(j: CollectionJson) -> Result<Self> {
        Collection::from_lists(j.n, &j.sets)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct CubeJson {
    #[serde(rename = "type")]
    kind: Vec<usize>,
    bottom: Vec<usize>,
}

impl CubeJson {
    fn of(c: &Cube) -> Self {
        CubeJson {
            kind: c.kind().to_vec(),
            bottom: c.bottom().to_vec(),
        }
    }

    fn cube(&self, n: usize) -> Result<Cube> {
        Cube::new(set(n, &self.kind)?, set(n, &self.bottom)?)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct CubillageJson {
    n: usize,
    d: usize,
    cubes: Vec<CubeJson>,
}

impl From<Cubillage> for CubillageJson {
    fn from(q: Cubillage) -> Self {
        CubillageJson {
            n: q.n(),
            d: q.d(),
            cubes: q.cubes().iter().map(CubeJson::of).collect(),
        }
    }
}

impl TryFrom<CubillageJson> for Cubillage {
    type Error = Error;

    fn try_from(j: CubillageJson) -> Result<Self> {
        let cubes = j
            .cubes
            .iter()
            .map(|c| c.cube(j.n))
            .collect::<Result<Vec<_>>>()?;
        Cubillage::new(j.n, j.d, cubes)
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct MembraneJson {
    n: usize,
    d: usize,
    facets: Vec<CubeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ideal: Option<Vec<Vec<usize>>>,
}

impl From<Membrane> for MembraneJson {
    fn from(m: Membrane) -> Self {
        MembraneJson {
            n: m.n(),
            d: m.d(),
            facets: m.facets().iter().map(CubeJson::of).collect(),
            ideal: m.ideal().map(|i| i.iter().map(|k| k.to_vec()).collect()),
        }
    }
}

impl TryFrom<MembraneJson> for Membrane {
    type Error = Error;

    /// The ideal, if present, is not trusted; it is recomputed when the
    /// membrane is placed in a cubillage.
    fn try_from(j: MembraneJson) -> Result<Self> {
        let facets = j
            .facets
            .iter()
            .map(|c| c.cube(j.n))
            .collect::<Result<Vec<_>>>()?;
        Membrane::new(j.n, j.d, facets)
    }
}

macro_rules! via_json {
    ($ty:ty, $json:ty) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$json>::from(self.clone()).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let j = <$json>::deserialize(d)?;
                <$ty>::try_from(j).map_err(serde::de::Error::custom)
            }
        }
    };
}

via_json!(Collection, CollectionJson);
via_json!(Cubillage, CubillageJson);
via_json!(Membrane, MembraneJson);
