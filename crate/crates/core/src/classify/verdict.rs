use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::shape::Shape;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    Definition,
    CriterionOdd,
    CriterionTwo,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Definition => "definition",
            Route::CriterionOdd => "criterion-odd",
            Route::CriterionTwo => "criterion-two",
        }
    }
}

/// A cyclic-by-`p` subgroup whose shape is not allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub generators: Vec<Permutation>,
    pub shape: Shape,
}

impl Witness {
    pub fn order(&self) -> u64 {
        self.shape.order()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 3)?;
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        st.serialize_field("generators", &gens)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("shape", &self.shape)?;
        st.end()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OortVerdict {
    pub p: u64,
    pub is_o_group: bool,
    pub route: Route,
    pub branch: String,
    pub witnesses: Vec<Witness>,
}

impl OortVerdict {
    pub(crate) fn positive(p: u64, route: Route, branch: &str) -> Self {
        OortVerdict {
            p,
            is_o_group: true,
            route,
            branch: branch.to_string(),
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn negative(p: u64, route: Route, branch: &str, witnesses: Vec<Witness>) -> Self {
        OortVerdict {
            p,
            is_o_group: false,
            route,
            branch: branch.to_string(),
            witnesses,
        }
    }
}
