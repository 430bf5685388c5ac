json = {
    "scenario": {
        "arguments": [
            {
                "defaults": 2.0,
                "name": "hop1.m",
                "tooltip": "Fading shape of the source-relay hop.",
                "type": "number",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0.5]},
            },
            {
                "defaults": 3.0,
                "name": "hop1.beta",
                "tooltip": "Fading exponent of the source-relay hop.",
                "type": "number",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0]},
            },
            {
                "defaults": 10.0,
                "name": "hop1.mean_snr_db",
                "suffix": "dB",
                "tooltip": "Average SNR of the source-relay hop.",
                "type": "number",
            },
            {
                "defaults": 2.0,
                "name": "hop2.m",
                "tooltip": "Fading shape of the relay-destination hop.",
                "type": "number",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0.5]},
            },
            {
                "defaults": 3.0,
                "name": "hop2.beta",
                "tooltip": "Fading exponent of the relay-destination hop.",
                "type": "number",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0]},
            },
            {
                "defaults": 10.0,
                "name": "hop2.mean_snr_db",
                "suffix": "dB",
                "tooltip": "Average SNR of the relay-destination hop (used when no balance "
                "ratios are given).",
                "type": "number",
            },
            {
                "defaults": "semi-blind",
                "name": "relay.mode",
                "options": ["semi-blind", "fixed-C"],
                "tooltip": "Relay constant derived from the first hop or fixed.",
                "type": "select",
            },
            {
                "name": "relay.C",
                "tooltip": "Fixed relay constant (required in fixed-C mode).",
                "type": "number",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0]},
            },
            {
                "defaults": 7,
                "name": "pade.A",
                "tooltip": "Numerator degree of the MGF approximant.",
                "type": "integer",
                "validates": ["min", "max"],
                "validatesArgs": {"max": [10], "min": [0]},
            },
            {
                "defaults": "oracle",
                "name": "pade.source",
                "options": ["oracle", "closed-form", "monte-carlo"],
                "tooltip": "Source of the moments feeding the approximant.",
                "type": "select",
            },
            {
                "defaults": 100000,
                "name": "sim.trials",
                "tooltip": "Number of Monte Carlo trials per point.",
                "type": "integer",
                "validates": ["min"],
                "validatesArgs": {"min": [1]},
            },
            {
                "defaults": 2024,
                "name": "sim.seed",
                "tooltip": "Monte Carlo seed.",
                "type": "integer",
                "validates": ["min", "max"],
                "validatesArgs": {"max": [2**64 - 1], "min": [0]},
            },
            {
                "defaults": 4,
                "name": "sim.shards",
                "tooltip": "Number of independent random streams.",
                "type": "integer",
                "validates": ["min"],
                "validatesArgs": {"min": [1]},
            },
            {
                "defaults": 1,
                "name": "sim.workers",
                "tooltip": "Number of threads running the random streams.",
                "type": "integer",
                "validates": ["min"],
                "validatesArgs": {"min": [1]},
            },
            {
                "defaults": "gamma1_db",
                "name": "sweep.axis",
                "options": ["gamma1_db", "gamma_th_db", "m", "beta"],
                "tooltip": "Quantity swept by the sweep points.",
                "type": "select",
            },
            {
                "defaults": [0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0],
                "items": "number",
                "name": "sweep.points",
                "tooltip": "Sweep points, strictly increasing.",
                "type": "list",
            },
            {
                "defaults": [],
                "items": "number",
                "name": "balance.ratios",
                "tooltip": "Ratios between the second and first hop average SNRs.",
                "type": "list",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0]},
            },
            {
                "defaults": [1.5, 2.5, 3.5],
                "items": "number",
                "name": "series.m1",
                "tooltip": "First-hop fading shapes for the relay constant sweep.",
                "type": "list",
                "validates": ["exclusiveMin"],
                "validatesArgs": {"exclusiveMin": [0.5]},
            },
            {
                "defaults": ["bdpsk", "bpsk"],
                "items": "select",
                "name": "abep.schemes",
                "options": ["bdpsk", "bpsk", "bfsk", "bfsk-min", "ncbfsk"],
                "tooltip": "Modulation schemes evaluated by the ABEP sweep.",
                "type": "list",
            },
            {
                "defaults": 0.0,
                "name": "outage.gamma_th_db",
                "suffix": "dB",
                "tooltip": "Outage threshold.",
                "type": "number",
            },
            {
                "defaults": 32,
                "name": "outage.order",
                "tooltip": "Initial Gauss-Laguerre order of the outage quadrature.",
                "type": "integer",
                "validates": ["min", "max"],
                "validatesArgs": {"max": [199], "min": [2]},
            },
        ],
        "label": "Dual-hop relay scenario",
    }
}
