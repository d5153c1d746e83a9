from qmimo._qmimo import *  # noqa: F401,F403
