/// Search limits shared by the enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group that closure will materialize.
    pub max_elements: usize,
    /// Largest group whose full subgroup lattice may be enumerated.
    pub max_subgroup_order: usize,
    /// Largest group whose automorphisms may be enumerated.
    pub max_automorphism_order: usize,
    /// Largest degree for searches that run over a whole symmetric group.
    pub max_symmetric_degree: usize,
    /// Largest product of class sizes scanned for generating tuples.
    pub max_tuple_space: u64,
}

impl Bounds {
    pub const DEFAULT: Bounds = Bounds {
        max_elements: 10_000,
        max_subgroup_order: 2_000,
        max_automorphism_order: 720,
        max_symmetric_degree: 8,
        max_tuple_space: 10_000_000,
    };

    pub const ENV_MAX_ELEMENTS: &'static str = "PREGAL_MAX_ELEMENTS";

    /// Defaults, with `max_elements` taken from the environment when set.
    pub fn from_env() -> Bounds {
        let mut b = Bounds::DEFAULT;
        if let Some(n) = std::env::var(Self::ENV_MAX_ELEMENTS)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            b.max_elements = n;
        }
        b
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::DEFAULT
    }
}
