import sys
from pathlib import Path

# make the shared families/oracles module importable regardless of invocation dir
sys.path.insert(0, str(Path(__file__).parent))
