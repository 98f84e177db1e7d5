from django.apps import AppConfig


class PythagConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'pythag'
    verbose_name = 'Pythagorean won-loss toolkit'
