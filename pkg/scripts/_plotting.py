"""Optional PNG output; scripts fall back to CSV only without matplotlib."""

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # plotting is optional
    plt = None


def available() -> bool:
    return plt is not None
