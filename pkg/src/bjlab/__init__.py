"""Wigner, spectrogram and generalized Born-Jordan time-frequency distributions."""

from bjlab.cohen import CohenResult, bjd, cohen_apply, fourier_multiplier_apply, smoothing_multiplier_check
from bjlab.errors import (
    BJLabError,
    ConstellationError,
    ConstellationOutOfBandError,
    GridError,
    InvalidParameterError,
    PreconditionError,
    ShiftOutOfRangeError,
    WavFormatError,
)
from bjlab.interference import (
    DampingReport,
    RegionSpec,
    cross_term_report,
    dilation_scaling,
    ghost_count,
    moyal_check,
    region_energy,
)
from bjlab.signals import (
    AtomSpec,
    Constellation,
    Signal,
    analytic_projection,
    four_atoms,
    gaussian,
    load_wav,
    modulate,
    rotate_constellation,
    synthesize,
    tf_shift,
    translate,
    write_wav,
)
from bjlab.splines import CohenKernelSpec, KernelMatrix, PiecewisePolynomial, bspline, bspline_ft_check, eval_pp, sinc, theta_grid
from bjlab.transforms import (
    MOYAL_KAPPA,
    AmbiguityMatrix,
    STFTMatrix,
    TFDistribution,
    ambiguity,
    cross_wigner,
    dft,
    idft,
    spectrogram,
    stft,
    symplectic_2d,
    wigner,
)

__version__ = "0.1.0"
