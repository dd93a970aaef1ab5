"""Run results: time-series container, summary statistics, CSV and plot emission."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

STEADY_WINDOW_FRACTION = 0.1  # trailing share of the run used for steady-state stats


@dataclass
class ChannelMap:
    """Column names and baselines, keyed by area, for structured access."""

    areas: list[str] = field(default_factory=list)
    delta_f: dict[str, str] = field(default_factory=dict)
    ace: dict[str, str] = field(default_factory=dict)
    load: dict[str, str] = field(default_factory=dict)
    v_rms: dict[str, str] = field(default_factory=dict)
    unit_delta: dict[str, list[tuple[str, float]]] = field(default_factory=dict)
    classic_delta: dict[str, list[str]] = field(default_factory=dict)
    wind_power: dict[str, list[str]] = field(default_factory=dict)
    d_filtered: dict[str, list[str]] = field(default_factory=dict)
    dvpp_total: dict[str, str] = field(default_factory=dict)
    dvpp_schedule: dict[str, float] = field(default_factory=dict)
    tie: dict[str, str] = field(default_factory=dict)


@dataclass
class SimOutput:
    """Uniform-grid time series of one run; rows at t = dt, 2*dt, ..., duration."""

    name: str
    dt_s: float
    t: np.ndarray
    data: dict[str, np.ndarray]
    chmap: ChannelMap
    event_times: list[float]
    three_phase: dict[str, np.ndarray] | None = None

    @property
    def n_rows(self) -> int:
        return len(self.t)

    @property
    def empty(self) -> bool:
        return len(self.t) == 0

    def columns(self) -> list[str]:
        return ["t_s"] + list(self.data)

    def steady_slice(self) -> slice:
        start = int((1.0 - STEADY_WINDOW_FRACTION) * self.n_rows)
        return slice(start, self.n_rows)


@dataclass
class RunSummary:
    name: str
    nadir_hz: dict[str, float]
    nadir_time_s: dict[str, float]
    steady_unit_delta_mw: dict[str, dict[str, float]]   # area -> column -> delta
    steady_dvpp_delta_mw: dict[str, float]
    steady_max_abs_delta_f_hz: dict[str, float]
    steady_max_abs_ace_pu: dict[str, float]
    steady_tie_pu: dict[str, float]
    steady_max_abs_tie_pu: dict[str, float]
    max_abs_ace_after_event_pu: dict[str, list[tuple[float, float]]]


def summarize(output: SimOutput) -> RunSummary:
    """Steady-state shares, nadirs and regulation errors of a completed run."""
    if output.empty:
        raise ValueError("cannot summarize an empty run")
    m = output.chmap
    steady = output.steady_slice()
    t = output.t

    nadir = {}
    nadir_t = {}
    steady_df = {}
    steady_ace = {}
    unit_deltas = {}
    dvpp_deltas = {}
    ace_windows = {}

    windows = sorted(set(output.event_times))
    edges = [tm for tm in windows if tm < t[-1]] or [0.0]

    for area in m.areas:
        df = output.data[m.delta_f[area]]
        i = int(np.argmin(df))
        nadir[area] = float(df[i])
        nadir_t[area] = float(t[i])
        steady_df[area] = float(np.max(np.abs(df[steady])))
        ace = output.data[m.ace[area]]
        steady_ace[area] = float(np.max(np.abs(ace[steady])))
        per_event = []
        for k, start in enumerate(edges):
            stop = edges[k + 1] if k + 1 < len(edges) else float(t[-1]) + output.dt_s
            mask = (t >= start) & (t < stop)
            peak = float(np.max(np.abs(ace[mask]))) if np.any(mask) else 0.0
            per_event.append((start, peak))
        ace_windows[area] = per_event
        deltas = {}
        for col, baseline in m.unit_delta.get(area, []):
            deltas[col] = float(np.mean(output.data[col][steady])) - baseline
        unit_deltas[area] = deltas
        if area in m.dvpp_total:
            total = output.data[m.dvpp_total[area]]
            dvpp_deltas[area] = float(np.mean(total[steady])) - m.dvpp_schedule[area]

    steady_tie = {}
    steady_abs_tie = {}
    for key, col in m.tie.items():
        flow = output.data[col]
        steady_tie[key] = float(np.mean(flow[steady]))
        steady_abs_tie[key] = float(np.max(np.abs(flow[steady])))

    return RunSummary(
        name=output.name,
        nadir_hz=nadir,
        nadir_time_s=nadir_t,
        steady_unit_delta_mw=unit_deltas,
        steady_dvpp_delta_mw=dvpp_deltas,
        steady_max_abs_delta_f_hz=steady_df,
        steady_max_abs_ace_pu=steady_ace,
        steady_tie_pu=steady_tie,
        steady_max_abs_tie_pu=steady_abs_tie,
        max_abs_ace_after_event_pu=ace_windows,
    )


def format_summary(s: RunSummary) -> str:
    lines = [f"run: {s.name}"]
    for area in s.nadir_hz:
        lines.append(
            f"  {area}: nadir {s.nadir_hz[area]:+.4f} Hz at t={s.nadir_time_s[area]:.2f} s, "
            f"steady max |df| {s.steady_max_abs_delta_f_hz[area]:.2e} Hz, "
            f"steady max |ace| {s.steady_max_abs_ace_pu[area]:.2e} pu"
        )
        for col, d in s.steady_unit_delta_mw.get(area, {}).items():
            lines.append(f"    {col}: steady delta {d:+.3f} MW")
        if area in s.steady_dvpp_delta_mw:
            lines.append(f"    dvpp total: steady delta {s.steady_dvpp_delta_mw[area]:+.3f} MW")
        for start, peak in s.max_abs_ace_after_event_pu.get(area, []):
            lines.append(f"    max |ace| after t={start:.0f} s: {peak:.4f} pu")
    for key, val in s.steady_tie_pu.items():
        lines.append(f"  tie {key}: steady {val:+.2e} pu (max |.| {s.steady_max_abs_tie_pu[key]:.2e})")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# file emission
# ---------------------------------------------------------------------------

def write_csv(output: SimOutput, path: str | Path, decimation: int = 1) -> Path:
    """Comma-separated series: header row with units, LF endings, time column first."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = list(output.data)
    sel = slice(decimation - 1, None, decimation)
    t = output.t[sel]
    series = [output.data[c][sel] for c in cols]
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t_s"] + cols)
            for i in range(len(t)):
                writer.writerow([repr(float(t[i]))] + [repr(float(col[i])) for col in series])
    except OSError as exc:
        raise OSError(f"cannot write CSV {path}: {exc}") from None
    return path


def write_three_phase_csv(output: SimOutput, path: str | Path) -> Path:
    """Full-rate three-phase waveform samples (one file, all areas)."""
    if output.three_phase is None:
        raise ValueError("run was recorded without the three-phase channel")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    cols = list(output.three_phase)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t_s"] + cols)
        for i in range(output.n_rows):
            writer.writerow(
                [repr(float(output.t[i]))]
                + [repr(float(output.three_phase[c][i])) for c in cols]
            )
    return path


PLOT_GROUPS = ("frequency", "powers", "ace", "tie", "voltage")


def write_plots(output: SimOutput, plot_dir: str | Path, channels=PLOT_GROUPS) -> list[Path]:
    """One PNG per selected channel group; filenames derive from the run name."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plot_dir = Path(plot_dir)
    plot_dir.mkdir(parents=True, exist_ok=True)
    m = output.chmap
    t = output.t
    written = []

    def save(fig, group: str) -> None:
        p = plot_dir / f"{output.name}_{group}.png"
        fig.savefig(p, dpi=110)
        plt.close(fig)
        written.append(p)

    for group in channels:
        if group == "frequency":
            fig, ax = plt.subplots(figsize=(8, 4))
            for area in m.areas:
                ax.plot(t, output.data[m.delta_f[area]], label=area)
            ax.set_xlabel("t [s]")
            ax.set_ylabel("frequency deviation [Hz]")
            ax.legend()
            ax.grid(True, alpha=0.4)
            fig.tight_layout()
            save(fig, group)
        elif group == "powers":
            fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
            for area in m.areas:
                for col in m.classic_delta.get(area, []):
                    ax1.plot(t, output.data[col], label=col)
            ax1.set_ylabel("classic unit delta [MW]")
            ax1.legend(fontsize=8)
            ax1.grid(True, alpha=0.4)
            for area in m.areas:
                for col in m.wind_power.get(area, []):
                    ax2.plot(t, output.data[col], label=col)
                if area in m.dvpp_total:
                    ax2.plot(t, output.data[m.dvpp_total[area]], label=m.dvpp_total[area])
            ax2.set_xlabel("t [s]")
            ax2.set_ylabel("wind power [MW]")
            ax2.legend(fontsize=8)
            ax2.grid(True, alpha=0.4)
            fig.tight_layout()
            save(fig, group)
        elif group == "ace":
            fig, ax = plt.subplots(figsize=(8, 4))
            for area in m.areas:
                ax.plot(t, output.data[m.ace[area]], label=area)
            ax.set_xlabel("t [s]")
            ax.set_ylabel("area control error [pu]")
            ax.legend()
            ax.grid(True, alpha=0.4)
            fig.tight_layout()
            save(fig, group)
        elif group == "tie":
            fig, ax = plt.subplots(figsize=(8, 4))
            for key, col in m.tie.items():
                ax.plot(t, output.data[col], label=key)
            ax.set_xlabel("t [s]")
            ax.set_ylabel("tie-line power deviation [pu]")
            if m.tie:
                ax.legend()
            ax.grid(True, alpha=0.4)
            fig.tight_layout()
            save(fig, group)
        elif group == "voltage":
            fig, ax = plt.subplots(figsize=(8, 4))
            for area in m.areas:
                ax.plot(t, output.data[m.v_rms[area]], label=area)
            ax.set_xlabel("t [s]")
            ax.set_ylabel("bus rms voltage [pu]")
            ax.legend()
            ax.grid(True, alpha=0.4)
            fig.tight_layout()
            save(fig, group)
        else:
            raise ValueError(f"unknown plot group {group!r}; expected one of {PLOT_GROUPS}")
    return written


def emit_outputs(output: SimOutput, config) -> list[Path]:
    """Write the CSV, the selected plots, and the optional waveform CSV."""
    written = [write_csv(output, config.csv_path(), config.output.decimation)]
    written += write_plots(output, config.output.plot_dir, config.output.channels)
    if config.output.three_phase:
        written.append(
            write_three_phase_csv(
                output, Path(config.output.plot_dir) / f"{output.name}_three_phase.csv"
            )
        )
    return written
