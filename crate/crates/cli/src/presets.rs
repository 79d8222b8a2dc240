//! Built-in experiment presets, embedded from `experiments/`.

/// A named, checked-in manifest.
pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig3",
        summary: "mere-exposure trajectories (d=2): baselines and softmax 1-3",
        text: include_str!("../../../experiments/fig3.toml"),
    },
    Preset {
        name: "fig4",
        summary: "engagement/magnitude/entropy grid (d=8): beta x gamma_me",
        text: include_str!("../../../experiments/fig4.toml"),
    },
    Preset {
        name: "fig5",
        summary: "operant-conditioning oscillations (d=2): baselines and softmax 1-3",
        text: include_str!("../../../experiments/fig5.toml"),
    },
    Preset {
        name: "fig6",
        summary: "mere exposure + hedonic adaptation: baseline-biased trajectories",
        text: include_str!("../../../experiments/fig6.toml"),
    },
    Preset {
        name: "fig7",
        summary: "oscillation period against the rating-baseline discount delta",
        text: include_str!("../../../experiments/fig7.toml"),
    },
    Preset {
        name: "fig8",
        summary: "persistent vs plain softmax, static and dynamic preferences",
        text: include_str!("../../../experiments/fig8.toml"),
    },
    Preset {
        name: "appendixB",
        summary: "oracle recommender over pure and mixed ME/OC dynamics",
        text: include_str!("../../../experiments/appendixB.toml"),
    },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
