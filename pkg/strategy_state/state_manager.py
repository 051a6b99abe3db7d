"""
Utility module for the prover's policy data.
Schedules and backends live in JSON state files so tuning them needs no code change.
"""

# builtins
import json
import os
from typing import Any, Dict, List, Optional
import logging

# local
from hol_prover.common.config import SCHEDULES_FILE, BACKENDS_FILE


logger = logging.getLogger(__name__)

REQUIRED_KEYS: Dict[str, List[str]] = {
    "schedules": ["name", "when", "strategies"],
    "backends": ["name", "command"],
}


class StrategyStateManager:
    """
    Loads the schedule policy table and the backend catalogue from JSON files.
    """

    def __init__(self, schedules_file: str = SCHEDULES_FILE, backends_file: str = BACKENDS_FILE):
        self.state_files: Dict[str, str] = {
            "schedules": schedules_file,
            "backends": backends_file,
        }

    def load_json_file(self, file_path: str) -> List[Dict[str, Any]]:
        '''
        Read one state file. A missing, unreadable or malformed file is
        logged and gives an empty list.
        '''
        if not os.path.isfile(file_path):
            logger.warning(f"State file {file_path} does not exist")
            return []
        try:
            with open(file_path, 'r') as f:
                data: Any = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Unreadable state file {file_path}: {e}")
            return []
        if not isinstance(data, list) or not all(isinstance(item, dict) for item in data):
            logger.error(f"State file {file_path} should contain a list of objects")
            return []
        return data

    def validate(self, state_name: str, state_list: List[Dict[str, Any]]) -> None:
        names: set[str] = set()
        for item in state_list:
            missing: List[str] = [key for key in REQUIRED_KEYS[state_name] if key not in item]
            if missing:
                raise ValueError(f"{state_name} entry {item.get('name', '?')} misses {', '.join(missing)}")
            if item["name"] in names:
                raise ValueError(f"duplicate {state_name} entry {item['name']}")
            names.add(item["name"])

    def get_state_list(self, state_name: str) -> list[dict]:
        try:
            file_path: Optional[str] = self.state_files.get(state_name)
            if not file_path:
                raise KeyError(f"Invalid state_name: {state_name}")
            state_list: list = self.load_json_file(file_path)
            if not state_list:
                raise ValueError(f"No data found in {file_path}")
            self.validate(state_name, state_list)
            return state_list
        except KeyError as ke:
            raise KeyError(f"KeyError getting state_list: {ke}")
        except ValueError as ve:
            raise ValueError(f"ValueError getting state_list: {ve}")

    def get_state_item(self, state_name: str, name: str) -> dict:
        for item in self.get_state_list(state_name):
            if item["name"] == name:
                return item
        raise KeyError(f"No {state_name} entry named {name}")
