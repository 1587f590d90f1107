"""
A short musical extract
=======================

Spectrogram against Born-Jordan distributions on a polyphonic extract. With
no argument a synthetic three-note chord is used; pass a 16-bit PCM WAV file
(and optionally a start frame) to analyse your own recording.

    python demos/music_extract.py [file.wav [start]]
"""

import sys
from pathlib import Path

from bjlab import analytic_projection, bjd, load_wav, spectrogram
from bjlab.experiments import stand_in_music
from bjlab.io import render

N = 256
out = Path("demo-output")
out.mkdir(exist_ok=True)

# %%
# Load a window of the recording, or build the stand-in chord.
if len(sys.argv) > 1:
    start = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    x = load_wav(sys.argv[1], start=start, length=N)
else:
    x = stand_in_music(N)
print(x.label, "sample period", x.sample_period)

# %%
# Remove negative frequencies first: the Wigner frequency axis only covers
# [0, 1/2) and a real signal would otherwise alias onto itself.
f = analytic_projection(x)

# %%
# dB renders keep the weaker overtones visible.
render(spectrogram(f), out / "music_spectrogram", scale="db", floor_db=-50)
for n in (0, 1, 3):
    render(bjd(f, n).distribution, out / f"music_bj{n}", scale="db", floor_db=-50)
print("images written to", out.resolve())
