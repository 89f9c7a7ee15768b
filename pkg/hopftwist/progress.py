import progressbar


class SuiteProgress(object):
    """Progress bar over a fixed list of example suites.

    Args:
        names: suite names in the order they will run
        enabled: when False every call is a no-op
    """

    _progressbar = None
    _widgets = None

    def __init__(self, names, enabled=True):
        self.names = list(names)
        self.enabled = enabled
        self.done = 0
        self.failed = 0

    def widgets(self):
        if not self._widgets:
            width = max(len(name) for name in self.names) if self.names else 1
            suite_widget = progressbar.DynamicMessage('suite', width=width)
            failed_widget = progressbar.DynamicMessage('failed', width=2)
            self._widgets = [
                ' [', suite_widget, '] ',
                progressbar.Bar(),
                ' [', failed_widget, '] ', progressbar.Timer()
            ]
        return self._widgets

    def initialize_progressbar(self):
        """Build and return a progress bar."""
        if self.enabled and not self._progressbar:
            self._progressbar = progressbar.ProgressBar(max_value=len(self.names), widgets=self.widgets())
            self._progressbar.start()
        return self._progressbar

    def update_progressbar(self, name, passed):
        """Mark a suite as finished.

        Args:
            name: suite that just finished
            passed: whether every check of the suite passed
        """
        self.done += 1
        if not passed:
            self.failed += 1
        if self._progressbar:
            self._progressbar.update(self.done, suite=name, failed=self.failed)

    def finish(self):
        if self._progressbar:
            self._progressbar.finish()
