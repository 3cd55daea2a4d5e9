import copy

# Parameter rows of the MRI, multispectral (clay .. cd) and color-video experiments.
# MRI/MSI rows are third order (6 mode pairs), the color video is fourth order (10 mode pairs).
PRESETS = {
    "mri": {
        "alpha": [1, 1, 1, 1, 1, 1],
        "tau": 10000,
        "eta": 1.1,
        "nu": 1,
        "vartheta": 500,
        "scheme": "normalized",
    },
    "clay": {
        "alpha": [0.01, 0.001, 1, 0.1, 1, 0.001],
        "tau": 10000,
        "eta": 1.1,
        "nu": 2.5,
        "vartheta": 500,
        "scheme": "normalized",
    },
    "chart_and_stuffed_toy": {
        "alpha": [0.1, 0.001, 1, 0.1, 1, 0.001],
        "tau": 10000,
        "eta": 1.1,
        "nu": 1,
        "vartheta": 500,
        "scheme": "normalized",
    },
    "balloons": {
        "alpha": [0.1, 0.001, 1, 0.1, 1, 0.01],
        "tau": 10000,
        "eta": 1.1,
        "nu": 2.5,
        "vartheta": 500,
        "scheme": "normalized",
    },
    "cd": {
        "alpha": [0.1, 0.01, 1, 0.1, 1, 0.01],
        "tau": 10000,
        "eta": 1.1,
        "nu": 0.5,
        "vartheta": 500,
        "scheme": "normalized",
    },
    "cv": {
        "alpha": [0.1, 1, 1, 1, 0.1, 1, 1, 1, 1, 0.1],
        "tau": 100000,
        "eta": 1.1,
        "nu": 0.1,
        "vartheta": 1000,
        "scheme": "raw",
    },
}


def get_preset(name):
    if name in PRESETS:
        return copy.deepcopy(PRESETS[name])
    else:
        raise ValueError(f"Preset {name} does not exist. Available: {', '.join(sorted(PRESETS))}")
