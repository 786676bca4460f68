import numpy as np
import pytest

from helpers.ppm import decode_ppm, encode_ppm, read_ppm, write_ppm
from percor.errors import BadMagic, TruncatedData
from percor.image import Image, checker


class TestImage:
    def test_checker_layout(self):
        tex = checker(16, 4)
        assert (tex.width, tex.height) == (16, 16)
        assert tuple(tex.pixels[0, 0]) == (224, 224, 224)
        assert tuple(tex.pixels[0, 4]) == (32, 32, 32)
        assert tuple(tex.pixels[4, 4]) == (224, 224, 224)

    def test_checker_needs_tiles(self):
        with pytest.raises(ValueError):
            checker(16, 0)

    def test_texel_clamps(self):
        tex = checker(16, 2)
        np.testing.assert_allclose(tex.texel(-0.5, 0.0), tex.texel(0.0, 0.0))
        np.testing.assert_allclose(tex.texel(1.0, 1.0), tex.pixels[15, 15] / 255.0)

    def test_from_float_rounds_and_clips(self):
        img = Image.from_float(np.array([[[0.0, 0.5, 1.2]]]))
        assert tuple(img.pixels[0, 0]) == (0, 128, 255)

    def test_shape_is_checked(self):
        with pytest.raises(ValueError):
            Image(np.zeros((4, 4), dtype=np.uint8))

    def test_diff(self):
        a = Image.blank(3, 2, (10, 20, 30))
        b = Image.blank(3, 2, (10, 20, 30))
        b.pixels[1, 2] = (15, 20, 0)
        assert a.count_different(b) == 1
        assert tuple(a.diff(b).pixels[1, 2]) == (5, 0, 30)


class TestPpm:
    def test_round_trip_is_bit_exact(self, tmp_path, rng):
        img = Image(rng.integers(0, 256, (7, 5, 3), dtype=np.uint8))
        path = tmp_path / "noise.ppm"
        write_ppm(path, img)
        back = read_ppm(path)
        np.testing.assert_array_equal(back.pixels, img.pixels)

    def test_header(self):
        data = encode_ppm(Image.blank(2, 1))
        assert data.startswith(b"P6\n2 1\n255\n")
        assert len(data) == len(b"P6\n2 1\n255\n") + 6

    def test_comments_in_header(self):
        data = b"P6\n# made by hand\n1 1\n# depth\n255\n" + bytes([1, 2, 3])
        assert tuple(decode_ppm(data).pixels[0, 0]) == (1, 2, 3)

    def test_ascii_ppm_is_rejected(self):
        with pytest.raises(BadMagic):
            decode_ppm(b"P3\n1 1\n255\n0 0 0\n")

    def test_other_maxval_is_rejected(self):
        with pytest.raises(BadMagic):
            decode_ppm(b"P6\n1 1\n65535\n" + bytes(6))

    def test_truncated_body(self):
        with pytest.raises(TruncatedData):
            decode_ppm(b"P6\n2 2\n255\n" + bytes(5))

    def test_truncated_header(self):
        with pytest.raises(TruncatedData):
            decode_ppm(b"P6\n2 2")
