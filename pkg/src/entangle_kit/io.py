"""JSON state files and version-stamped CSV tables."""

import csv
import json
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ValidationError
from .states import as_density, as_state, num_qubits


def _complex_array(data):
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValidationError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _encode(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.stack([z.real, z.imag], axis=-1).tolist()


def load_state(path):
    """Pure state (1d) or density matrix (2d) from ``{"n", "amplitudes"|"density"}``."""
    obj = json.loads(Path(path).read_text())
    if "amplitudes" in obj:
        psi = _complex_array(obj["amplitudes"])
        if psi.ndim != 1:
            raise ValidationError("amplitudes must be a flat list of [re, im] pairs")
        state = psi
    elif "density" in obj:
        state = _complex_array(obj["density"])
    else:
        raise ValidationError("state file needs 'amplitudes' or 'density'")
    n = num_qubits(state.shape[0])
    if "n" in obj and int(obj["n"]) != n:
        raise ValidationError(f"declared n={obj['n']} but data has {n} qubits")
    try:
        return as_state(state, tol=1e-10) if state.ndim == 1 else as_density(state, tol=1e-10)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def save_state(path, state):
    state = np.asarray(state, dtype=np.complex128)
    key = "amplitudes" if state.ndim == 1 else "density"
    obj = {"n": num_qubits(state.shape[0]), key: _encode(state)}
    Path(path).write_text(json.dumps(obj))


def load_omega(path, symmetry="antisymmetric", tol=1e-12):
    """Two-particle amplitude matrix ``{"omega": [[[re, im], ...], ...]}``."""
    obj = json.loads(Path(path).read_text())
    omega = _complex_array(obj["omega"])
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ValidationError("omega must be a square matrix")
    sign = -1 if symmetry == "antisymmetric" else 1
    if np.abs(omega - sign * omega.T).max() > tol * max(1.0, np.abs(omega).max()):
        raise ValidationError(f"omega is not {symmetry}")
    return omega


def _cell(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return v


def write_csv(path, header, rows):
    """CSV with a ``# entangle-kit <version>`` stamp; floats written with repr."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        fh.write(f"# entangle-kit {__version__}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def read_csv(path):
    with Path(path).open() as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    return header, [row for row in reader]


def to_jsonable(obj):
    """Recursively convert numpy values and complex numbers for json.dumps."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj
