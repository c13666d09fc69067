# network_datasets/domain.py
from dataclasses import dataclass, field

from spectral.domain import Network
from spectral.exceptions import SizeMismatch


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Упорядоченная выборка сетей одного размера.

    labels - необязательные метки сетей (кластер, авиакомпания), meta -
    строковые параметры происхождения выборки (генератор, seed).
    """

    networks: tuple[Network, ...]
    labels: tuple[str | None, ...] | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "networks", tuple(self.networks))
        if not self.networks:
            raise ValueError("Выборка должна содержать хотя бы одну сеть")
        sizes = sorted({net.n for net in self.networks})
        if len(sizes) > 1:
            raise SizeMismatch(f"Сети выборки разного размера: {sizes}")
        ids = [net.id for net in self.networks]
        if len(set(ids)) != len(ids):
            raise ValueError("Идентификаторы сетей должны быть уникальны")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(self.networks):
                raise ValueError("Число меток не совпадает с числом сетей")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(
            self, "meta", {str(k): str(v) for k, v in self.meta.items()}
        )

    @property
    def n(self) -> int:
        return self.networks[0].n

    @property
    def ids(self) -> list[str]:
        return [net.id for net in self.networks]

    def __len__(self):
        return len(self.networks)

    def __iter__(self):
        return iter(self.networks)

    def __getitem__(self, index):
        return self.networks[index]

    def label(self, index):
        return None if self.labels is None else self.labels[index]


@dataclass(frozen=True)
class RegionMapping:
    """Фиксированный порядок макрорегионов и отображение страны в регион."""

    regions: tuple[str, ...]
    country_to_region: dict[str, str]

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        unknown = sorted(set(self.country_to_region.values()) - set(self.regions))
        if unknown:
            raise ValueError(f"Страны отнесены к неизвестным регионам: {unknown}")

    def region_index(self, country):
        region = self.country_to_region.get(country)
        if region is None:
            return None
        return self.regions.index(region)
