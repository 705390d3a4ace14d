# Command implementations and file formats
from .check import EXIT_INPUT_ERROR, EXIT_OK, EXIT_ROW_FAILED, cmd_check, prepare_state
from .reproduce import SCENARIOS, ReproRow, cmd_reproduce
from .state_files import (
    StateFile, load_state, load_witness, parse_state, parse_witness,
    save_state, save_witness, state_to_dict, witness_to_dict,
)
from .witness_cmd import cmd_witness_certify, cmd_witness_construct, cmd_witness_evaluate

# Command registry: name -> callable returning (exit_code, output)
COMMANDS = {
    "check": cmd_check,
    "witness construct": cmd_witness_construct,
    "witness evaluate": cmd_witness_evaluate,
    "witness certify": cmd_witness_certify,
    "reproduce": cmd_reproduce,
}

__all__ = [
    'EXIT_INPUT_ERROR', 'EXIT_OK', 'EXIT_ROW_FAILED', 'cmd_check', 'prepare_state',
    'SCENARIOS', 'ReproRow', 'cmd_reproduce',
    'StateFile', 'load_state', 'load_witness', 'parse_state', 'parse_witness',
    'save_state', 'save_witness', 'state_to_dict', 'witness_to_dict',
    'cmd_witness_certify', 'cmd_witness_construct', 'cmd_witness_evaluate',
    'COMMANDS',
]
