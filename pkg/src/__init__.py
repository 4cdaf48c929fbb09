"""Rate regions for interference channels with transmitter-side state"""

__version__ = "0.1.0"
