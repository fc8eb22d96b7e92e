"""Exception hierarchy shared by the cipher, image I/O and analysis code."""


class CipherError(Exception):
    """Base class for every error raised by this package."""


class MalformedKeyError(CipherError, ValueError):
    pass


class InvalidBlockError(CipherError, ValueError):
    pass


class InvalidDimensionError(CipherError, ValueError):
    pass


class InvalidImageError(CipherError, ValueError):
    pass


class UndefinedCorrelationError(CipherError, ValueError):
    """Both sequences are constant, so the correlation coefficient has no value."""


class ImageFormatError(CipherError):
    """Base for raster file decoding/encoding problems."""


class UnsupportedFormatError(ImageFormatError):
    pass


class CorruptFileError(ImageFormatError):
    pass


class UnsupportedDepthError(ImageFormatError):
    pass


class ChannelMismatchError(ImageFormatError, ValueError):
    pass
