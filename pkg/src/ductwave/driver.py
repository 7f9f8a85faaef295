"""Time-loop orchestration of the coupled duct problem.

One step, all from level-n data: evaluate the wall sources G and their
rate for every node from the pressure history (identically zero with
losses off), advance the interior nodes with the second-order expansion,
rebuild both boundary nodes from their characteristic relations with the
inflow datum taken at the new time level, then append the new nodal
pressures to the history. The time step is frozen at the start of the
run (the convolution weights assume uniform dt), set by the CFL rule on
the initial rest field.

Runs are deterministic: identical scenarios produce bit-identical
states, histories and probe records.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import wall
from .analysis import ProbeRecord
from .boundaries import inflow_update_pressure, inflow_update_velocity, outflow_update
from .gas import GasModel, primitive_arrays
from .scheme import (
    DuctGeometry,
    FieldState,
    Grid,
    StepControl,
    compute_dt,
    lax_wendroff_update,
    uniform_field,
)
from .wall import KernelWeights, PressureHistory

PRESSURE = "pressure"
VELOCITY = "velocity"


@dataclass(frozen=True)
class Scenario:
    """Complete description of one simulation.

    duration is given either in seconds or in fundamental periods of the
    inflow signal (exactly one of the two).
    """

    gas: GasModel
    grid: Grid
    geom: DuctGeometry
    inflow_kind: str
    inflow: object
    losses: bool = True
    cfl: float = 0.8
    duration_s: float | None = None
    duration_periods: float | None = None
    probes: tuple[float, ...] = ()
    sampling_exponent: int = 10
    kernel_mode: str = wall.CONSISTENT
    m_max: int | None = None

    def __post_init__(self):
        if self.inflow_kind not in (PRESSURE, VELOCITY):
            raise ValueError(f"unknown inflow kind {self.inflow_kind!r}")
        if (self.duration_s is None) == (self.duration_periods is None):
            raise ValueError("specify exactly one of duration_s/duration_periods")
        if self.duration_s is not None and self.duration_s <= 0.0:
            raise ValueError("duration must be positive")
        if self.duration_periods is not None and self.duration_periods <= 0.0:
            raise ValueError("duration must be positive")
        for x in self.probes:
            if not (0.0 <= x <= self.grid.length):
                raise ValueError(f"probe station {x} outside the duct")
        if self.kernel_mode not in (wall.CONSISTENT, wall.AS_PRINTED):
            raise ValueError(f"unknown kernel mode {self.kernel_mode!r}")

    @property
    def fundamental_period(self) -> float | None:
        return getattr(self.inflow, "period", None)

    @property
    def duration(self) -> float:
        if self.duration_s is not None:
            return self.duration_s
        period = self.fundamental_period
        if period is None:
            raise ValueError(
                "duration_periods needs an inflow signal with a period"
            )
        return self.duration_periods * period

    def velocity_bound(self) -> float:
        """Conservative bound on the boundary velocity amplitude [m/s]."""
        peak = self.inflow.peak()
        if self.inflow_kind == PRESSURE:
            return peak / (self.gas.rho0 * self.gas.c0)
        return peak


@dataclass(frozen=True)
class RunReport:
    """Run metadata: discretization, cost, and kernel settings."""

    dt: float
    n_steps: int
    dx: float
    cells: int
    length: float
    cfl: float
    losses: bool
    kernel_mode: str
    m_max: int | None
    wall_clock_s: float


@dataclass(frozen=True)
class RunResult:
    scenario: Scenario
    state: FieldState
    history: PressureHistory
    records: tuple[ProbeRecord, ...]
    resampled: tuple[ProbeRecord, ...]
    report: RunReport


def frozen_dt(scenario: Scenario) -> float:
    """Time step used for the whole run: CFL rule on the initial rest field."""
    rest = uniform_field(scenario.grid, scenario.gas,
                         scenario.gas.rho0, 0.0, scenario.gas.p0)
    dt = compute_dt(rest, scenario.grid, scenario.gas,
                    StepControl(cfl=scenario.cfl))
    gas = scenario.gas
    stretch = 1.0 + 0.5 * (gas.gamma + 1.0) * scenario.velocity_bound() / gas.c0
    if scenario.cfl * stretch > 1.0:
        warnings.warn(
            f"effective Courant number may reach {scenario.cfl * stretch:.3f}"
            " at the signal peak; reduce cfl",
            stacklevel=2,
        )
    return dt


def initialize(scenario: Scenario) -> tuple[FieldState, PressureHistory]:
    """Rest field at (rho0, 0, p0) and a history seeded with p^0 = p0."""
    state = uniform_field(scenario.grid, scenario.gas,
                          scenario.gas.rho0, 0.0, scenario.gas.p0)
    history = PressureHistory(
        n_nodes=scenario.grid.n_nodes, dt=frozen_dt(scenario),
        m_max=scenario.m_max,
    )
    _, _, p = primitive_arrays(state.w, scenario.gas)
    history.append(p)
    return state, history


def _source_tables(history: PressureHistory, n: int, scenario: Scenario,
                   weights: KernelWeights, dt: float,
                   g_prev: np.ndarray | None):
    """G and dG/dt for all nodes at step n (zeros with losses off)."""
    shape = (scenario.grid.n_nodes, 3)
    if not scenario.losses:
        zero = np.zeros(shape)
        return zero, zero, None
    g_now = wall.source_table(history, n, weights, scenario.gas,
                              scenario.grid, scenario.geom,
                              scenario.kernel_mode)
    if n == 0:
        return g_now, np.zeros(shape), g_now
    if g_prev is None:
        g_prev = wall.source_table(history, n - 1, weights, scenario.gas,
                                   scenario.grid, scenario.geom,
                                   scenario.kernel_mode)
    return g_now, (g_now - g_prev) / dt, g_now


def _advance(state: FieldState, history: PressureHistory, scenario: Scenario,
             weights: KernelWeights, dt: float,
             g_prev: np.ndarray | None) -> tuple[FieldState, np.ndarray | None]:
    """Core cycle shared by the pure step() and the cached Simulation."""
    gas, grid = scenario.gas, scenario.grid
    g_now, dt_g, g_keep = _source_tables(history, state.n, scenario, weights,
                                         dt, g_prev)
    new = lax_wendroff_update(state, g_now, dt_g, gas, grid, dt)

    value = scenario.inflow.value(state.t + dt)
    if scenario.inflow_kind == PRESSURE:
        w0 = inflow_update_pressure(gas.p0 + value, state.w[0], state.w[1],
                                    gas, dt, grid.dx)
    else:
        w0 = inflow_update_velocity(value, state.w[0], state.w[1],
                                    gas, dt, grid.dx)
    w_out = outflow_update(state.w[-2], state.w[-1], gas, dt, grid.dx)
    new.w[0] = np.asarray(w0)
    new.w[-1] = np.asarray(w_out)
    new.validate(step=new.n)

    _, _, p = primitive_arrays(new.w, gas)
    history.append(p)
    return new, g_keep


def step(state: FieldState, history: PressureHistory, scenario: Scenario,
         weights: KernelWeights | None = None,
         dt: float | None = None) -> FieldState:
    """Advance one full coupled cycle, appending the new pressures.

    Self-contained: the previous source table needed by the source rate is
    reconstructed from the history, so the result depends only on
    (state, history, scenario).
    """
    if weights is None:
        weights = KernelWeights()
    if dt is None:
        dt = history.dt
    new, _ = _advance(state, history, scenario, weights, dt, g_prev=None)
    return new


class Simulation:
    """Stateful runner that caches the previous source table between steps."""

    def __init__(self, scenario: Scenario,
                 initial_field: FieldState | None = None):
        self.scenario = scenario
        self.dt = frozen_dt(scenario)
        self.weights = KernelWeights()
        if initial_field is None:
            self.state, self.history = initialize(scenario)
        else:
            if initial_field.w.shape != (scenario.grid.n_nodes, 3):
                raise ValueError("initial field does not match the grid")
            self.state = initial_field.copy()
            self.history = PressureHistory(
                n_nodes=scenario.grid.n_nodes, dt=self.dt,
                m_max=scenario.m_max,
            )
            _, _, p = primitive_arrays(self.state.w, scenario.gas)
            self.history.append(p)
        self._g_prev: np.ndarray | None = None
        self._probe_nodes = tuple(
            scenario.grid.nearest_node(x) for x in scenario.probes
        )
        self._probe_rows = [[] for _ in self._probe_nodes]
        self._record_probes()

    def _record_probes(self):
        if not self._probe_nodes:
            return
        rho, u, p = primitive_arrays(self.state.w, self.scenario.gas)
        for rows, j in zip(self._probe_rows, self._probe_nodes):
            rows.append((rho[j], u[j], p[j]))

    def advance(self):
        """One coupled step (sources, interior, boundaries, history, probes)."""
        self.state, self._g_prev = _advance(
            self.state, self.history, self.scenario, self.weights, self.dt,
            self._g_prev,
        )
        self._record_probes()

    def native_records(self) -> tuple[ProbeRecord, ...]:
        dx = self.scenario.grid.dx
        return tuple(
            ProbeRecord(station_index=j, x=j * dx, tau=self.dt,
                        data=np.asarray(rows), t_start=0.0)
            for rows, j in zip(self._probe_rows, self._probe_nodes)
        )


def run(scenario: Scenario,
        initial_field: FieldState | None = None) -> RunResult:
    """Run a scenario to its configured duration.

    Probe records are stored at every native step; when the inflow has a
    fundamental period they are additionally interpolated onto the
    tau = T0/2^N grid over the largest whole number of periods covered.
    """
    started = time.perf_counter()
    sim = Simulation(scenario, initial_field=initial_field)
    n_steps = int(math.ceil(scenario.duration / sim.dt - 1e-9))
    for _ in range(n_steps):
        sim.advance()
    elapsed = time.perf_counter() - started

    records = sim.native_records()
    resampled = tuple(
        r for r in (_resample_on_period_grid(rec, scenario) for rec in records)
        if r is not None
    )
    report = RunReport(
        dt=sim.dt, n_steps=n_steps, dx=scenario.grid.dx,
        cells=scenario.grid.cells, length=scenario.grid.length,
        cfl=scenario.cfl, losses=scenario.losses,
        kernel_mode=scenario.kernel_mode, m_max=scenario.m_max,
        wall_clock_s=elapsed,
    )
    return RunResult(scenario=scenario, state=sim.state, history=sim.history,
                     records=records, resampled=resampled, report=report)


def _resample_on_period_grid(record: ProbeRecord,
                             scenario: Scenario) -> ProbeRecord | None:
    period = scenario.fundamental_period
    if period is None:
        return None
    tau = period / 2 ** scenario.sampling_exponent
    span = (record.n_samples - 1) * record.tau
    n_periods = int(math.floor(span / period + 1e-9))
    if n_periods < 1:
        return None
    t_new = np.arange(n_periods * 2 ** scenario.sampling_exponent + 1) * tau
    t_old = record.times - record.t_start
    data = np.column_stack([
        np.interp(t_new, t_old, record.data[:, i]) for i in range(3)
    ])
    return ProbeRecord(station_index=record.station_index, x=record.x,
                       tau=tau, data=data, t_start=record.t_start)
