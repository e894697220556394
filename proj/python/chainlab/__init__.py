"""Energy-transport laboratory for 1-D oscillator chains with conservative noise.

The heavy lifting lives in the compiled extension ``chainlab._core``; this
package re-exports its public surface.
"""

from chainlab._core import *  # noqa: F401,F403
from chainlab._core import __version__  # noqa: F401
