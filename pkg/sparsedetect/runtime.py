def loglevel(v):
    loglevels = ('trace', 'debug', 'info', 'warning', 'error', 'critical')
    if v not in loglevels:
        raise ValueError('loglevel must be one of %r' % (loglevels,))
    return v


def num_threads(v):
    v = int(v)
    if v < 1:
        raise ValueError('num_threads must be a positive integer')
    return v


def progress_mode(v):
    modes = ('auto', 'always', 'never')
    if v not in modes:
        raise ValueError('progress must be one of %r' % (modes,))
    return v


AVAILABLE_SETTINGS = (
    # (name, type, default)
    ('loglevel', loglevel, 'info'),
    ('num_threads', num_threads, 1),
    ('progress', progress_mode, 'auto'),
)


class RuntimeSettings:
    """Process-wide settings that do not change the numbers a run produces"""

    def __init__(self):
        self.__locked__ = False
        self.__setting_types__ = {}

        for setting, typ, default in AVAILABLE_SETTINGS:
            setattr(self, setting, default)
            self.__setting_types__[setting] = typ

        self.__settings__ = set(self.__setting_types__.keys())
        self.__locked__ = True

    def __setattr__(self, attr, val):
        if attr == '__locked__' or not self.__locked__:
            return super(RuntimeSettings, self).__setattr__(attr, val)

        # prevent adding new settings
        if attr not in self.__settings__:
            raise AttributeError('Unknown runtime setting %s' % attr)

        stype = self.__setting_types__.get(attr)
        if stype is not None:
            val = stype(val)

        return super(RuntimeSettings, self).__setattr__(attr, val)

    def __repr__(self):
        setval = ', '.join(
            '%s=%s' % (key, repr(getattr(self, key))) for key in sorted(self.__settings__)
        )
        return '{clsname}({setval})'.format(
            clsname=self.__class__.__name__,
            setval=setval
        )
