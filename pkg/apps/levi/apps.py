from django.apps import AppConfig


class LeviConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.levi'
