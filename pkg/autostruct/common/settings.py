class Settings:
    """
    Tunables shared by all modules.
    A single instance, `settings`, is imported where a bound is needed; the CLI overrides it from flags.
    """

    def __init__(self):
        self._counting_state_budget = 20000
        self._strict_counting = False
        self._transducer_max_lag = 2
        self._disjointness_multiplier_bound = 12
        self._qe_certify_limit = 200000
        self._positivity_max_shift = 8
        self._chamber_check_bound = 25

    @property
    def counting_state_budget(self) -> int:
        """Largest number of states the exact modulo-counting construction may explore."""
        return self._counting_state_budget

    @counting_state_budget.setter
    def counting_state_budget(self, value: int):
        if type(value) is not int or value < 100:
            raise ValueError("counting state budget must be an integer >= 100")
        self._counting_state_budget = value

    @property
    def strict_counting(self) -> bool:
        """Raise instead of excluding assignments whose counted section is infinite."""
        return self._strict_counting

    @strict_counting.setter
    def strict_counting(self, value: bool):
        if type(value) is not bool:
            raise ValueError("strict counting must be boolean")
        self._strict_counting = value

    @property
    def transducer_max_lag(self) -> int:
        """
        Longest buffered input or output a transducer conversion tracks. The configurations can grow like
        |base|^(2·lag) in the worst case, so raise it only for transducers whose output really runs that far ahead.
        """
        return self._transducer_max_lag

    @transducer_max_lag.setter
    def transducer_max_lag(self, value: int):
        if type(value) is not int or value < 1 or value > 16:
            raise ValueError("transducer lag must be between 1 and 16")
        self._transducer_max_lag = value

    @property
    def disjointness_multiplier_bound(self) -> int:
        return self._disjointness_multiplier_bound

    @disjointness_multiplier_bound.setter
    def disjointness_multiplier_bound(self, value: int):
        if type(value) is not int or value < 1:
            raise ValueError("multiplier bound must be a positive integer")
        self._disjointness_multiplier_bound = value

    @property
    def qe_certify_limit(self) -> int:
        return self._qe_certify_limit

    @qe_certify_limit.setter
    def qe_certify_limit(self, value: int):
        if type(value) is not int or value < 0:
            raise ValueError("certification limit must be a natural number")
        self._qe_certify_limit = value

    @property
    def positivity_max_shift(self) -> int:
        return self._positivity_max_shift

    @positivity_max_shift.setter
    def positivity_max_shift(self, value: int):
        if type(value) is not int or value < 0 or value > 64:
            raise ValueError("positivity shift must be between 0 and 64")
        self._positivity_max_shift = value

    @property
    def chamber_check_bound(self) -> int:
        return self._chamber_check_bound

    @chamber_check_bound.setter
    def chamber_check_bound(self, value: int):
        if type(value) is not int or value < 0:
            raise ValueError("chamber check bound must be a natural number")
        self._chamber_check_bound = value


settings = Settings()
