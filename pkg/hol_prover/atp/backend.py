"""
First-order backends run as subprocesses.
"""
# builtins
from dataclasses import dataclass, replace
import logging
import os
from shutil import which
import signal
import subprocess
import sys
import tempfile
import time
from typing import Any, Dict, List, Optional

# local
from hol_prover.atp.szs import SzsStatus, parse_szs
from hol_prover.common.config import KEEP_TEMP, PROJECT_ROOT, SLICE_GRACE


logger = logging.getLogger(__name__)

FILE_PLACEHOLDER = "{file}"


class BackendConfigError(ValueError):
    """A backend entry is malformed (e.g. no {file} placeholder)."""


@dataclass(frozen=True)
class BackendConfig:
    '''
    One first-order prover.
    Args:
        name: str - catalogue name, used by --atp NAME=PATH.
        command: List[str] - argument template; {file}, {timeout} and {python}
            are substituted per call.
        timeout: float - seconds per call.
        enabled: bool - disabled backends are never dispatched to.
        remote: bool - the command talks to a remote service.
        keep_temp: bool - keep the problem file after the call.
    '''
    name: str
    command: List[str]
    timeout: float = 10.0
    enabled: bool = True
    remote: bool = False
    keep_temp: bool = False

    def __post_init__(self) -> None:
        if not self.command:
            raise BackendConfigError(f"backend {self.name} has an empty command")
        if not any(FILE_PLACEHOLDER in arg for arg in self.command):
            raise BackendConfigError(f"backend {self.name} command must contain {FILE_PLACEHOLDER}")

    @classmethod
    def from_dict(cls, entry: Dict[str, Any]) -> "BackendConfig":
        try:
            return cls(
                name=entry["name"],
                command=list(entry["command"]),
                timeout=float(entry.get("timeout", 10.0)),
                enabled=bool(entry.get("enabled", True)),
                remote=bool(entry.get("remote", False)),
            )
        except KeyError as ke:
            raise BackendConfigError(f"backend entry misses {ke}: {entry}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "command": list(self.command),
            "timeout": self.timeout,
            "enabled": self.enabled,
            "remote": self.remote,
        }

    def arguments(self, path: str, timeout: float) -> List[str]:
        values: Dict[str, str] = {"file": path, "timeout": str(max(1, int(timeout))), "python": sys.executable}
        return [arg.format(**values) for arg in self.command]

    def with_executable(self, executable: str) -> "BackendConfig":
        '''
        Same argument shape with another executable (--atp NAME=PATH).
        '''
        return replace(self, command=[executable] + list(self.command[1:]), enabled=True)

    def executable_available(self) -> bool:
        program: str = self.command[0].format(file='', timeout='', python=sys.executable)
        if os.path.sep in program:
            return os.access(program, os.X_OK)
        return which(program) is not None


@dataclass
class BackendResult:
    status: SzsStatus
    output: str = ''
    elapsed: float = 0.0
    backend: str = ''
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "elapsed": round(self.elapsed, 3),
            "backend": self.backend,
            "error": self.error,
        }


def _kill(process: subprocess.Popen) -> None:
    try:
        os.killpg(process.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        process.kill()


def invoke_backend(problem_text: str, cfg: BackendConfig, timeout: Optional[float] = None) -> BackendResult:
    '''
    Write the problem to a temp file, run the backend on it and read its SZS status.
    Failures never raise: spawn errors give Error, expiry gives Timeout and
    output without a status line gives Unknown.
    Args:
        problem_text: str - TPTP FOF text.
        cfg: BackendConfig
        timeout: float - overrides cfg.timeout.
    Returns:
        BackendResult
    '''
    limit: float = cfg.timeout if timeout is None else timeout
    handle, path = tempfile.mkstemp(prefix="hol_prover_", suffix=".p")
    started: float = time.monotonic()
    try:
        with os.fdopen(handle, 'w') as f:
            f.write(problem_text)
        args: List[str] = cfg.arguments(path, limit)
        logger.debug(f"running backend {cfg.name}: {' '.join(args)}")
        try:
            process: subprocess.Popen = subprocess.Popen(
                args, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True, start_new_session=True,
                cwd=PROJECT_ROOT,
            )
        except OSError as e:
            logger.error(f"Error starting backend {cfg.name}: {e}")
            return BackendResult(SzsStatus.ERROR, '', time.monotonic() - started, cfg.name, str(e))
        try:
            output, _ = process.communicate(timeout=limit + SLICE_GRACE)
        except subprocess.TimeoutExpired:
            _kill(process)
            try:
                output, _ = process.communicate(timeout=SLICE_GRACE)
            except subprocess.TimeoutExpired:
                output = ''
            logger.info(f"backend {cfg.name} killed after {limit}s")
            return BackendResult(SzsStatus.TIMEOUT, output or '', time.monotonic() - started, cfg.name)
        status: SzsStatus = parse_szs(output)
        if status == SzsStatus.UNKNOWN and process.returncode not in (0, None):
            logger.warning(f"backend {cfg.name} exited with code {process.returncode} without a status")
        return BackendResult(status, output, time.monotonic() - started, cfg.name)
    finally:
        if KEEP_TEMP or cfg.keep_temp:
            logger.info(f"kept backend input {path}")
        else:
            try:
                os.remove(path)
            except OSError:
                pass


def select_backend(backends: Dict[str, BackendConfig], name: Optional[str] = None) -> Optional[BackendConfig]:
    '''
    The named backend, or the first enabled one.
    '''
    if name is not None:
        cfg: Optional[BackendConfig] = backends.get(name)
        return cfg if cfg is not None and cfg.enabled else None
    return next((cfg for cfg in backends.values() if cfg.enabled), None)


def apply_override(backends: Dict[str, BackendConfig], override: str) -> Dict[str, BackendConfig]:
    '''
    Apply one --atp NAME=PATH override: an existing backend keeps its argument
    shape with the new executable, an unknown name gets `PATH {file}`.
    Raises:
        BackendConfigError: override is not NAME=PATH.
    '''
    name, sep, executable = override.partition('=')
    if not sep or not name or not executable:
        raise BackendConfigError(f"--atp expects NAME=PATH, got '{override}'")
    updated: Dict[str, BackendConfig] = dict(backends)
    known: Optional[BackendConfig] = backends.get(name)
    if known is not None:
        updated[name] = known.with_executable(executable)
    else:
        updated[name] = BackendConfig(name, [executable, FILE_PLACEHOLDER])
    # the override is tried first
    return {name: updated[name], **{k: v for k, v in updated.items() if k != name}}
