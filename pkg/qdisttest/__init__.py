from . import ampest  # noqa: F401
from . import baselines  # noqa: F401
from . import core  # noqa: F401
from . import encodings  # noqa: F401
from . import oracles  # noqa: F401
from . import poly  # noqa: F401
from . import svt  # noqa: F401
from . import testers  # noqa: F401
from . import utils  # noqa: F401
from . import harness  # noqa: F401

__version__ = "0.1.0"
