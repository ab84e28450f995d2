//! Canned configs behind `z2lab repro <figure-id>`.

use crate::config::{Command, ConfigError, ExperimentConfig};

pub struct Recipe {
    pub id: &'static str,
    pub about: &'static str,
    pub command: Command,
    pub text: &'static str,
}

pub const RECIPES: &[Recipe] = &[
    Recipe {
        id: "fig2",
        about: "baseline order parameters along q = 1/2",
        command: Command::Run,
        text: "model = baseline\nL = [32, 64, 128]\nT = linear(4)\nq = 0.5\np_zz = linspace(0.2, 0.7, 11)\nobservable = [chi_sg, chi_pm, s_half]\ntrials = 500\n",
    },
    Recipe {
        id: "fig5",
        about: "spanning of coherent bonds with measurement errors only",
        command: Command::Percolation,
        text: "model = baseline\nL = [32, 64, 128]\nT = linear(1)\nq = 0\np_zz = linspace(0.4, 0.6, 11)\nobservable = [spans_time, spans_space, largest_fraction]\ntrials = 1000\n",
    },
    Recipe {
        id: "fig6a",
        about: "1+1d path-sum decoding with T proportional to L",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 1\nL = [16, 32, 64, 128]\nT = linear(1)\np_zz = 0.6\np_err = linspace(0, 0.1, 11)\ndecoder = path-sum\ntrials = 2000\n",
    },
    Recipe {
        id: "fig6b",
        about: "1+1d path-sum decoding with T proportional to ln L",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 1\nL = [16, 32, 64, 128]\nT = log(4)\np_zz = 0.6\np_err = linspace(0, 0.1, 11)\ndecoder = path-sum\ntrials = 2000\n",
    },
    Recipe {
        id: "fig6c",
        about: "1+1d path-sum decoding with constant T",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 1\nL = [16, 32, 64, 128]\nT = const(8)\np_zz = 0.6\np_err = linspace(0, 0.1, 11)\ndecoder = path-sum\ntrials = 2000\n",
    },
    Recipe {
        id: "fig7",
        about: "2+1d path-sum decoding with T proportional to L",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 2\nL = [8, 12, 16, 24]\nT = linear(4)\np_zz = 0.6\np_err = linspace(0.16, 0.26, 11)\ndecoder = path-sum\ntrials = 1000\n",
    },
    Recipe {
        id: "fig7-faulty",
        about: "2+1d path-sum decoding with faulty check outcomes",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 2\nL = [8, 12, 16, 24]\nT = linear(4)\np_zz = 0.6\np_err = linspace(0.06, 0.16, 11)\nfaulty = true\ndecoder = path-sum\ntrials = 1000\n",
    },
    Recipe {
        id: "fig8",
        about: "symmetric unitaries added to the baseline at q = 1/2",
        command: Command::Run,
        text: "model = perturbed\nL = [32, 64]\nT = linear(4)\nq = 0.5\np_u = 0.2\np_zz = linspace(0.2, 0.7, 11)\nobservable = [chi_sg, chi_pm, s_half]\ntrials = 200\n",
    },
    Recipe {
        id: "fig9",
        about: "ladder with a measured bath",
        command: Command::Run,
        text: "model = ladder\nL = [16, 32]\nT = linear(4)\nq = 0.5\np_bath = 0.1\np_zz = linspace(0.2, 0.7, 11)\nobservable = [chi_sg, chi_pm, s_half]\ntrials = 200\n",
    },
    Recipe {
        id: "fig10a",
        about: "path-sum decoding of 1+1d Clifford trajectories",
        command: Command::DecodeSweep,
        text: "model = repetition\ndim = 1\nL = [16, 32, 64]\nT = linear(1)\np_zz = 0.6\np_err = linspace(0, 0.3, 11)\ndecoder = path-sum\ntrials = 500\n",
    },
    Recipe {
        id: "fig10b",
        about: "path-sum decoding of 2+1d Clifford trajectories",
        command: Command::DecodeSweep,
        text: "model = repetition\ndim = 2\nL = [6, 8, 12]\nT = linear(4)\np_zz = 0.6\np_err = linspace(0.1, 0.3, 11)\ndecoder = path-sum\ntrials = 200\n",
    },
    Recipe {
        id: "fig11b",
        about: "MWPM with faulty outcomes and every check measured",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 1\nL = [8, 16, 32, 64]\nT = linear(1)\np_zz = 1\np_err = linspace(0.02, 0.16, 8)\nfaulty = true\ndecoder = mwpm\ntrials = 2000\n",
    },
    Recipe {
        id: "fig11c",
        about: "MWPM on 1+1d histories with p_zz = 1 - p_err",
        command: Command::DecodeSweep,
        text: "model = classical\ndim = 1\nL = [8, 16, 32, 64]\nT = linear(1)\np_zz = complement\np_err = linspace(0.05, 0.2, 11)\ndecoder = mwpm\ntrials = 2000\n",
    },
    Recipe {
        id: "fig11d",
        about: "MWPM on toric bit-flip histories with p_plaq = 1 - p_err",
        command: Command::DecodeSweep,
        text: "model = toric\nL = [8, 12, 16, 24]\nT = linear(1)\np_plaq = complement\np_err = linspace(0.01, 0.1, 10)\ndecoder = mwpm\ntrials = 500\n",
    },
    Recipe {
        id: "fig12",
        about: "half-chain mutual information at the three critical points",
        command: Command::Run,
        text: "model = baseline\nL = [64, 128, 256]\nT = linear(4)\nq = 0\np_zz = 0.5\nobservable = [mi_ab, mi_half]\ntrials = 500\n",
    },
    Recipe {
        id: "fig13",
        about: "ladder with an unmeasured bath",
        command: Command::Run,
        text: "model = ladder\nL = [16, 32]\nT = linear(4)\nq = 0.5\np_bath = 0\np_zz = linspace(0.2, 0.7, 11)\nobservable = [chi_sg, chi_pm, mi_ab]\ntrials = 200\n",
    },
];

pub fn recipe(id: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.id == id)
}

impl Recipe {
    pub fn config(&self) -> Result<ExperimentConfig, ConfigError> {
        ExperimentConfig::from_text(self.command, self.text)
    }
}
